#pragma once

#include <vector>

#include "lmg/integrate.hpp"
#include "lmg/lmg_model.hpp"
#include "lmg/types.hpp"

namespace lmg {

enum class InitialStateKind { rotated_ground, rotated_stretched };

// |psi> = R_y(theta) |GS>  or  R_y(theta) |S,S>, rho(0) = |psi><psi|.
struct InitialStateSpec {
  InitialStateKind kind = InitialStateKind::rotated_stretched;
  double theta = 0.0;
};

MatrixXcd initial_state(const ModelParams& p, const InitialStateSpec& spec);

// Observables along an integrated trajectory.  Expectation values are raw
// (not divided by S); trace_error is |tr rho - 1|.
struct Trajectory {
  VectorXd times;
  VectorXd sx, sy, sz;      // <S_i>
  VectorXd energy;          // <H_S>
  VectorXd trace_error;
  VectorXd purity;          // tr rho^2
  VectorXd min_eigenvalue;  // only when tracked
  bool has_min_eigenvalue = false;
  MatrixXcd final_state;    // state at the last grid time, full spin basis
  IntegratorStats stats;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  bool track_min_eigenvalue = true;
  double trace_tol = 1e-8;
  // When positive, evolve in the subspace of this many lowest H_S
  // eigenstates instead of the full spin space.  The projected generator is
  // again of Lindblad form; the far high-energy states carry the stiffest
  // rates while staying unpopulated, so a restricted run takes much larger
  // stable steps.  The initial state must fit the subspace (leaked weight
  // beyond restrict_tol is an error).
  int restrict_levels = 0;
  double restrict_tol = 1e-10;
};

// Integrates d rho / dt = lindblad_action(rho) with an adaptive embedded
// Runge-Kutta 4(5) scheme; the Hermitian part is enforced after every
// accepted step and the trace is monitored against trace_tol.
Trajectory evolve(const ModelParams& p, const MatrixXcd& rho0,
                  const std::vector<double>& t_grid, const EvolveOptions& opt = {});

// Least-squares fit of a trajectory channel to A exp(-kappa t) cos(omega t + phi).
struct DampedOscillationFit {
  double amplitude = 0.0;
  double decay = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  double residual = 0.0;  // RMS of the fit residual
  bool low_amplitude = false;
  int iterations = 0;
};

DampedOscillationFit fit_damped_oscillation(const VectorXd& times,
                                            const VectorXd& values);

}  // namespace lmg
