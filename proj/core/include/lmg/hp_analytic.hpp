#pragma once

#include "lmg/types.hpp"

namespace lmg {

// Semiclassical magnetization direction: tilt angle theta0 and the unit
// vector m = (sin theta0, 0, cos theta0).  theta0 = 0 in the symmetric phase
// (Lambda < 1) and arccos(1/Lambda) in the broken phase; the positive branch
// is fixed globally.
struct Magnetization {
  double theta0;
  double mx, my, mz;
};

Magnetization semiclassical_magnetization(double Lambda);

// All scalars of the Holstein-Primakoff / Bogoliubov construction:
// quadratic-Hamiltonian coefficients, Bogoliubov angle, mode frequency and
// the jump coefficients B+- of the bosonized jump operator
// L = sqrt(gamma) (B+ b^dag + B- b).
struct HpParams {
  double Lambda, T;
  double theta0, mx, my, mz;
  double omega_a;      // a-boson frequency  m_z + Lambda - 3 m_z^2 Lambda / 2
  double gamma_a;      // pairing amplitude  -m_z^2 Lambda / 4
  double epsilon;      // -2 gamma_a / omega_a
  double phi_b;        // Bogoliubov angle, tanh(phi_b) = epsilon
  double omega_b;      // omega_a sqrt(1 - epsilon^2)
  double b_plus, b_minus;

  // Scalar shift of H_S: delta0(S) = -S (m_z + Lambda m_x^2/2) - Lambda m_z^2/4.
  double delta0_slope;   // coefficient of S
  double delta0_offset;  // S-independent part

  double delta0(double S) const { return delta0_slope * S + delta0_offset; }
  // Ground energy of the oscillator form: E0 = delta0 + (omega_b - omega_a)/2.
  double ground_energy(double S) const {
    return delta0(S) + 0.5 * (omega_b - omega_a);
  }
  // Boltzmann ratio (B+/B-)^2 = exp(-omega_b / T_ss) of the stationary state.
  double boltzmann_ratio() const {
    const double r = b_plus / b_minus;
    return r * r;
  }
};

// Throws critical_point_error at Lambda = 1, where omega_b vanishes and the
// Bogoliubov construction is singular.
HpParams hp_params(double Lambda, double T);

// Weak-dissipation Liouvillian eigenvalue
//   lambda_{Delta,n} = i omega_b Delta - (m_z gamma / 2) (|Delta| + 2n).
Complex liouvillian_eigenvalue(int delta, int n, double Lambda, double gamma);
Complex liouvillian_eigenvalue(const HpParams& hp, int delta, int n, double gamma);

// Stationary temperature: exact value -omega_b / (2 ln(B+/B-)) and the
// high-temperature series T (1 - w^2/48T^2 - w^4/2880T^4).
struct StationaryTemperature {
  double exact;
  double series;
};

StationaryTemperature stationary_temperature(double Lambda, double T);

// Stationary state in the b-boson Fock basis: diagonal, entries proportional
// to (B+/B-)^(2n).  Throws cutoff_error if the geometric tail beyond n_max
// carries more than 1e-10 mass.
MatrixXcd hp_stationary_state(double Lambda, double T, int n_max);

// The printed form of the disentangling coefficient A+ (numerator B+) does
// not reproduce the stationary Boltzmann ratio; the consistent form
// (numerator B+^2) does.  Both are kept so the discrepancy stays testable.
enum class APlusForm { consistent, printed };

// su(1,1) disentangling data for the symmetric-phase time evolution.
struct Su11Factors {
  double psi;           // squeezing parameter, tanh(psi) = 2 B+ B- / (B+^2 + B-^2)
  double a_plus;        // A+(t), pair-creation coefficient, A+(0) = 0
  double a_zero;        // A0(t) = exp(-m_z gamma t / 2) (1 - A+)
  double theta_prime;   // coherent amplitude theta sqrt(S/2) exp(-phi_b/2)
  double theta_dprime;  // theta_prime exp(-m_z gamma t / 2)
};

Su11Factors su11_factors(double Lambda, double T, double gamma, double t,
                         double theta, double S,
                         APlusForm form = APlusForm::consistent);

// Boltzmann factor exp(-omega_b / T_S(t)) = A+(t) of the instantaneous
// thermal state, and the corresponding effective temperature T_S(t)
// (T_S(0) = 0, T_S(inf) = T_ss).
double thermal_factor(double Lambda, double T, double gamma, double t);
double effective_temperature(double Lambda, double T, double gamma, double t);

// Closed-form evolved state in the truncated b-boson Fock basis: a displaced
// thermal state, rho(t) = D(alpha(t)) rho_th(T_S(t)) D^dag(alpha(t)) with
// alpha(t) = theta'' exp(-i omega_b t).
MatrixXcd evolved_state_hp(double Lambda, double T, double gamma, double t,
                           double theta, double S, int n_max);

// <H_S>/S along the closed-form evolution; `finite_size` carries the 1/S
// heating term, `bulk` is the strict infinite-S limit of the expression.
struct EnergyExpectation {
  double finite_size;
  double bulk;
};

EnergyExpectation energy_expectation_hp(double Lambda, double T, double gamma,
                                        double t, double theta, double S);

struct MagnetizationCurve {
  double mx, my, mz;
};

MagnetizationCurve magnetization_hp(double Lambda, double T, double gamma,
                                    double t, double theta, double S);

}  // namespace lmg
