#pragma once

#include <vector>

#include "lmg/banded.hpp"
#include "lmg/integrate.hpp"
#include "lmg/types.hpp"

namespace lmg {

// Truncated-Fock numerics for the bosonized master equation: the quadratic
// Lindbladian with H = omega_b b^dag b + i (m_z gamma / 4)(b^dag b^dag - bb)
// and jump operator L = sqrt(gamma) (B+ b^dag + B- b).  Serves as the
// brute-force reference for every closed-form result.

// Annihilation operator on the (n_max+1)-dimensional Fock space.
BandedMatrix boson_annihilation(int n_max);

// Single-mode banded operators of the bosonized model.
struct BosonicModel {
  int n_max = 0;
  double omega_b = 0.0;
  BandedMatrix h, jump, jump_adj, ldl;
};

BosonicModel bosonic_model(double Lambda, double gamma, double T, int n_max);

// Two-mode vectorized Lindbladian
//   U = i omega_b (b2^dag b2 - b1^dag b1)
//     + (m_z gamma / 4)(b1^dag b1^dag + b2^dag b2^dag - h.c.)
//   D = L1 L2 - (L1^dag L1 + L2^dag L2)/2,  L_i = sqrt(gamma)(B+ b_i^dag + B- b_i)
// as a dense matrix on the vectorized two-mode Fock space (index i*(n_max+1)+j).
MatrixXcd bosonic_superoperator(double Lambda, double gamma, double T, int n_max);

// Diagonal of the boson parity superoperator (-1)^(n1+n2); plays the role of
// Ad_P for the bosonized model.
VectorXcd bosonic_parity_diagonal(int n_max);

struct OracleStationary {
  MatrixXcd rho;          // Hermitized, unit trace, Fock basis
  double occupation;      // <b^dag b>
  Complex pair_moment;    // <b b>
  double residual;        // |L vec(rho)|_inf
};

// Stationary state from the kernel of the two-mode superoperator (linear
// solve with a trace-normalization row).
OracleStationary oracle_stationary(double Lambda, double gamma, double T, int n_max);

struct BosonTrajectory {
  VectorXd times;
  VectorXcd mode_mean;               // <b>
  VectorXd occupation;               // <b^dag b>
  VectorXd effective_temperature;    // from the n=0,1 diagonal ratio
  IntegratorStats stats;
};

// Integrates the truncated single-mode master equation from the coherent
// state with amplitude theta' = theta sqrt(S/2) exp(-phi_b/2).
BosonTrajectory oracle_evolution(double Lambda, double gamma, double T,
                                 double theta, double S,
                                 const std::vector<double>& t_grid, int n_max);

}  // namespace lmg
