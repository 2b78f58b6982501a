#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lmg {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Eigen::VectorXi;

inline const char* version_string() { return "0.1.0"; }

// Invalid physical or construction parameters (bad S, negative gamma, ...).
struct invalid_parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The Holstein-Primakoff construction is singular at the critical coupling
// Lambda = 1 (omega_b = 0); callers must stay off the critical point.
struct critical_point_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Analytic expression evaluated outside its domain of validity
// (e.g. 4T <= omega_b in the stationary-temperature logarithm).
struct out_of_domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Closed-form dynamics is only available in the symmetric phase.
struct unsupported_regime_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Fock-space cutoff too small for the requested state (tail mass above guard).
struct cutoff_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full superoperator materialization refused; use the restricted builder.
struct dimension_budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense eigensolver or root finder failed to converge.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical inputs of the dissipative model, hbar and field strength h fixed
// to 1.  S is the spin quantum number (2S must be a non-negative integer),
// Lambda >= 0 the collective coupling, gamma >= 0 the dissipation strength
// and T > 0 the bath temperature.
struct ModelParams {
  double S = 1.0;
  double Lambda = 0.0;
  double gamma = 0.0;
  double T = 1.0;

  // Hilbert-space dimension 2S+1.
  int dim() const;
  void validate() const;
};

// Validates S and returns 2S+1.
int spin_dimension(double S);

}  // namespace lmg
