#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lmg/banded.hpp"
#include "lmg/spin_algebra.hpp"
#include "lmg/types.hpp"

namespace lmg {

// H_S = -(Lambda/2S) Sx^2 - Sz
MatrixXcd hamiltonian_system(const ModelParams& p);

// H_gamma = (gamma/4S) {Sx, Sy}
MatrixXcd hamiltonian_gamma(const ModelParams& p);

// L = sqrt(2 gamma T / S) (Sx + i Sy / 4T); parity-odd, P^dag L P = -L.
MatrixXcd jump_operator(const ModelParams& p);

// Dense model operators, assembled once and reused.
struct ModelOperators {
  MatrixXcd hs, hgamma, jump, ldl;  // ldl = L^dag L
  MatrixXcd h;                      // hs + hgamma
};

ModelOperators build_operators(const ModelParams& p);

// Banded views of the same operators; the right-hand side of the master
// equation then costs O(d^2) per evaluation instead of O(d^3).
struct BandedModel {
  int dim = 0;
  BandedMatrix h, hs, jump, jump_adj, ldl;
  BandedMatrix sx, sy, sz;
};

BandedModel banded_model(const ModelParams& p);

// Lindblad action i [rho, H_S + H_gamma] + L rho L^dag - {L^dag L, rho}/2,
// computed by operator products.
MatrixXcd lindblad_action(const ModelOperators& ops, const MatrixXcd& rho);
MatrixXcd lindblad_action(const ModelParams& p, const MatrixXcd& rho);

// Banded evaluation into a caller-provided buffer (used by the integrator).
// Fused column sweep, parallelized over columns.
void lindblad_action(const BandedModel& ops, const MatrixXcd& rho, MatrixXcd& out);

// Full superoperator on vec(rho) (row-major convention, see vec.hpp).
// Refuses dimensions with d^2 > max_dim2; large systems go through
// restricted_superoperator instead.
MatrixXcd lindblad_superoperator(const ModelParams& p, int max_dim2 = 4096);

// Ad_P rho = P^dag rho P; diagonal in the vec basis with entries
// conj(p_i) p_j = +-1.
VectorXcd parity_superoperator_diagonal(double S);
MatrixXcd parity_superoperator(double S);

// Truncated eigenbasis of H_S: the K lowest eigenstates with exact parity
// labels.  H_S is diagonalized separately inside each parity block (even /
// odd ladder of S_z indices), so quasi-degenerate pairs in the broken phase
// never mix numerically.
struct RestrictedBasis {
  double S = 0;
  int hilbert_dim = 0;
  VectorXd energies;       // ascending
  MatrixXd vectors;        // d x K, real
  VectorXi parity;         // +-1 block sign per eigenstate
  VectorXcd parity_phase;  // exact eigenvalue of P per eigenstate

  // Embeds a K x K operator back into the full S_z basis: V A V^T.
  MatrixXcd lift(const MatrixXcd& a) const;
};

RestrictedBasis restricted_basis(const ModelParams& p, int K);

// Superoperator of the Lindbladian projected onto the K lowest H_S
// eigenstates.  If band_quanta is set, the operator basis is further
// restricted to matrix units |i><j| with |E_i - E_j| <= band_quanta * scale,
// where the scale is omega_b (mean level spacing if the Holstein-Primakoff
// frequency is unavailable).  The projected generator is itself of Lindblad
// form, so trace preservation is exact.
struct RestrictedSuperoperator {
  MatrixXcd matrix;                        // P x P over the retained pairs
  std::vector<std::pair<int, int>> pairs;  // retained (i, j) eigenstate pairs
  VectorXcd parity;                        // diagonal of Ad_P in the pair basis
  RestrictedBasis basis;
  MatrixXcd h;     // projected H_S + H_gamma
  MatrixXcd jump;  // projected L
};

RestrictedSuperoperator restricted_superoperator(
    const ModelParams& p, int K, std::optional<double> band_quanta = {});

}  // namespace lmg
