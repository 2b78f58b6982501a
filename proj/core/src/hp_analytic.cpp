#include "lmg/hp_analytic.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace lmg {

namespace {

void check_lambda_temperature(double Lambda, double T) {
  if (!(Lambda >= 0.0) || !std::isfinite(Lambda))
    throw invalid_parameter_error("Lambda must be >= 0");
  if (!(T > 0.0) || !std::isfinite(T))
    throw invalid_parameter_error("T must be > 0");
}

void require_symmetric_phase(const HpParams& hp) {
  if (hp.Lambda >= 1.0)
    throw unsupported_regime_error(
        "closed-form time evolution is restricted to the symmetric phase (Lambda < 1)");
}

}  // namespace

Magnetization semiclassical_magnetization(double Lambda) {
  if (!(Lambda >= 0.0) || !std::isfinite(Lambda))
    throw invalid_parameter_error("Lambda must be >= 0");
  const double theta0 = Lambda < 1.0 ? 0.0 : std::acos(1.0 / Lambda);
  return {theta0, std::sin(theta0), 0.0, std::cos(theta0)};
}

HpParams hp_params(double Lambda, double T) {
  check_lambda_temperature(Lambda, T);
  if (Lambda == 1.0)
    throw critical_point_error("Lambda = 1 is the critical point: omega_b = 0");

  HpParams hp{};
  hp.Lambda = Lambda;
  hp.T = T;
  const Magnetization m = semiclassical_magnetization(Lambda);
  hp.theta0 = m.theta0;
  hp.mx = m.mx;
  hp.my = m.my;
  hp.mz = m.mz;

  hp.omega_a = hp.mz + Lambda - 1.5 * hp.mz * hp.mz * Lambda;
  hp.gamma_a = -0.25 * hp.mz * hp.mz * Lambda;
  hp.delta0_slope = -(hp.mz + 0.5 * Lambda * hp.mx * hp.mx);
  hp.delta0_offset = -0.25 * Lambda * hp.mz * hp.mz;

  hp.epsilon = -2.0 * hp.gamma_a / hp.omega_a;
  hp.phi_b = std::atanh(hp.epsilon);
  hp.omega_b = hp.omega_a * std::sqrt(1.0 - hp.epsilon * hp.epsilon);

  // In both phases the jump coefficients reduce to
  //   B+- = sqrt(m_z) (sqrt(T/w) -+ sqrt(w/T)/4),  w = omega_b,
  // which obeys B-^2 - B+^2 = m_z and B+/B- = (4T - w)/(4T + w).
  const double root_mz = std::sqrt(hp.mz);
  const double c = std::sqrt(T / hp.omega_b);
  const double d = 0.25 * std::sqrt(hp.omega_b / T);
  hp.b_plus = root_mz * (c - d);
  hp.b_minus = root_mz * (c + d);
  return hp;
}

Complex liouvillian_eigenvalue(const HpParams& hp, int delta, int n, double gamma) {
  if (n < 0) throw invalid_parameter_error("n must be >= 0");
  if (!(gamma >= 0.0)) throw invalid_parameter_error("gamma must be >= 0");
  return Complex(-0.5 * hp.mz * gamma * (std::abs(delta) + 2.0 * n),
                 hp.omega_b * delta);
}

Complex liouvillian_eigenvalue(int delta, int n, double Lambda, double gamma) {
  return liouvillian_eigenvalue(hp_params(Lambda, 1.0), delta, n, gamma);
}

StationaryTemperature stationary_temperature(double Lambda, double T) {
  const HpParams hp = hp_params(Lambda, T);
  if (4.0 * T <= hp.omega_b)
    throw out_of_domain_error("stationary temperature requires 4T > omega_b");
  const double w = hp.omega_b;
  StationaryTemperature out;
  // -w / (2 ln(B+/B-)) with B+/B- = (4T-w)/(4T+w); the atanh form evaluates
  // the logarithm without cancellation at large T
  out.exact = w / (4.0 * std::atanh(w / (4.0 * T)));
  const double u = w / T;
  out.series = T * (1.0 - u * u / 48.0 - u * u * u * u / 2880.0);
  return out;
}

MatrixXcd hp_stationary_state(double Lambda, double T, int n_max) {
  const HpParams hp = hp_params(Lambda, T);
  if (n_max < 1) throw invalid_parameter_error("n_max must be >= 1");
  const double x = hp.boltzmann_ratio();
  if (!(x < 1.0))
    throw out_of_domain_error("stationary state requires (B+/B-)^2 < 1");
  // normalized geometric distribution; mass beyond the cutoff is x^(n_max+1)
  const double tail = std::pow(x, n_max + 1);
  if (tail > 1e-10)
    throw cutoff_error("Fock cutoff too small: tail mass " + std::to_string(tail));
  const int dim = n_max + 1;
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  double w = 1.0, norm = 0.0;
  for (int n = 0; n < dim; ++n, w *= x) norm += w;
  w = 1.0;
  for (int n = 0; n < dim; ++n, w *= x) rho(n, n) = w / norm;
  return rho;
}

Su11Factors su11_factors(double Lambda, double T, double gamma, double t,
                         double theta, double S, APlusForm form) {
  const HpParams hp = hp_params(Lambda, T);
  require_symmetric_phase(hp);
  if (!(gamma >= 0.0) || t < 0.0)
    throw invalid_parameter_error("gamma and t must be non-negative");
  spin_dimension(S);

  const double bp = hp.b_plus, bm = hp.b_minus, mz = hp.mz;
  Su11Factors f{};
  f.psi = std::atanh(2.0 * bp * bm / (bp * bp + bm * bm));

  // A+(t) = N (1 - e^(-mz gamma t)) / (B-^2 - B+^2 e^(-mz gamma t)); the
  // consistent numerator N = B+^2 makes A+(inf) the Boltzmann ratio
  // (B+/B-)^2 of the stationary state, and it is the fixed point of the
  // Riccati flow dA/dt = gamma (B-^2 A^2 - (B+^2+B-^2) A + B+^2).
  const double decay = std::exp(-mz * gamma * t);
  const double numerator = form == APlusForm::consistent ? bp * bp : bp;
  f.a_plus = numerator * (1.0 - decay) / (bm * bm - bp * bp * decay);
  f.a_zero = std::exp(-0.5 * mz * gamma * t) * (1.0 - f.a_plus);
  f.theta_prime = theta * std::sqrt(0.5 * S) * std::exp(-0.5 * hp.phi_b);
  f.theta_dprime = f.theta_prime * std::exp(-0.5 * mz * gamma * t);
  return f;
}

double thermal_factor(double Lambda, double T, double gamma, double t) {
  const HpParams hp = hp_params(Lambda, T);
  require_symmetric_phase(hp);
  const double bp = hp.b_plus, bm = hp.b_minus;
  const double decay = std::exp(-hp.mz * gamma * t);
  return bp * bp * (1.0 - decay) / (bm * bm - bp * bp * decay);
}

double effective_temperature(double Lambda, double T, double gamma, double t) {
  const double a = thermal_factor(Lambda, T, gamma, t);
  if (a <= 0.0) return 0.0;
  const HpParams hp = hp_params(Lambda, T);
  return -hp.omega_b / std::log(a);
}

MatrixXcd evolved_state_hp(double Lambda, double T, double gamma, double t,
                           double theta, double S, int n_max) {
  const HpParams hp = hp_params(Lambda, T);
  require_symmetric_phase(hp);
  if (t < 0.0) throw invalid_parameter_error("t must be >= 0");
  const int dim = n_max + 1;

  const Su11Factors f = su11_factors(Lambda, T, gamma, t, theta, S);
  const double a = f.a_plus;  // Boltzmann factor exp(-omega_b/T_S(t))
  if (a >= 1.0) throw out_of_domain_error("thermal factor >= 1");
  if (std::pow(std::max(a, 1e-300), n_max + 1) > 1e-10 && a > 0.0)
    throw cutoff_error("Fock cutoff too small for thermal tail");

  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  double w = 1.0, norm = 0.0;
  for (int n = 0; n < dim; ++n, w *= a) norm += w;
  w = 1.0;
  for (int n = 0; n < dim; ++n, w *= a) rho(n, n) = w / norm;

  // coherent displacement with amplitude theta'' e^(-i omega_b t)
  const Complex alpha = f.theta_dprime * std::exp(Complex(0.0, -hp.omega_b * t));
  if (std::norm(alpha) + 6.0 * std::sqrt(std::norm(alpha) + 1.0) > n_max)
    throw cutoff_error("Fock cutoff too small for coherent displacement");
  MatrixXcd b = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(double(n));
  const MatrixXcd generator = alpha * b.adjoint() - std::conj(alpha) * b;
  // exp of the anti-Hermitian generator via the Hermitian i*generator
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(Complex(0, 1) * generator);
  if (es.info() != Eigen::Success) throw solver_error("displacement eigensolver failed");
  const VectorXcd phases =
      (Complex(0, -1) * es.eigenvalues().cast<Complex>()).array().exp();
  const MatrixXcd disp = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  rho = disp * rho * disp.adjoint();
  const double defect = std::abs(1.0 - rho.trace().real());
  if (defect > 1e-9)
    throw cutoff_error("Fock cutoff too small: displaced-state trace defect " +
                       std::to_string(defect));
  rho /= rho.trace();
  return rho;
}

EnergyExpectation energy_expectation_hp(double Lambda, double T, double gamma,
                                        double t, double theta, double S) {
  const HpParams hp = hp_params(Lambda, T);
  require_symmetric_phase(hp);
  const double w = hp.omega_b;
  const double oscillation =
      0.5 * theta * theta * w * std::exp(-gamma * t - hp.phi_b);
  const double a = thermal_factor(Lambda, T, gamma, t);
  const double occupation = a / (1.0 - a);  // 1/(e^{w/T_S(t)} - 1)
  EnergyExpectation out;
  out.bulk = hp.delta0_slope + oscillation;
  out.finite_size = hp.ground_energy(S) / S + oscillation + w * occupation / S;
  return out;
}

MagnetizationCurve magnetization_hp(double Lambda, double T, double gamma,
                                    double t, double theta, double S) {
  const HpParams hp = hp_params(Lambda, T);
  require_symmetric_phase(hp);
  const double w = hp.omega_b, phi = hp.phi_b;
  const double half_decay = std::exp(-0.5 * gamma * t);
  const double a = thermal_factor(Lambda, T, gamma, t);
  const double occupation = a / (1.0 - a);
  MagnetizationCurve out;
  out.mx = theta * half_decay * std::cos(w * t);
  out.my = -theta * half_decay * std::exp(-phi) * std::sin(w * t);
  out.mz = 1.0 -
           0.5 * theta * theta * std::exp(-gamma * t - phi) *
               (std::cosh(phi) + std::cos(2.0 * w * t) * std::sinh(phi)) -
           (std::pow(std::sinh(0.5 * phi), 2) + std::cosh(phi) * occupation) / S;
  return out;
}

}  // namespace lmg
