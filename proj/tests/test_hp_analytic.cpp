#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <lmg/hp_analytic.hpp>

using namespace lmg;

namespace {

// Jump coefficients rebuilt from the Bogoliubov angle instead of the
// simplified closed form; independent route used to validate the latter.
std::pair<double, double> b_coefficients_from_angle(const HpParams& hp) {
  const double sh = std::sinh(0.5 * hp.phi_b), ch = std::cosh(0.5 * hp.phi_b);
  const double pre = 1.0 / (4.0 * std::sqrt(hp.T));
  const double four_mz_t = 4.0 * hp.mz * hp.T;
  const double bp = pre * ((four_mz_t + 1.0) * sh + (four_mz_t - 1.0) * ch);
  const double bm = pre * ((four_mz_t - 1.0) * sh + (four_mz_t + 1.0) * ch);
  return {bp, bm};
}

std::mt19937 rng(12345);

double random_lambda() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // half the draws in each phase, away from the critical point
  if (u(rng) < 0.5) return 0.02 + 0.93 * u(rng);
  return 1.05 + 2.5 * u(rng);
}

}  // namespace

TEST_CASE("semiclassical magnetization") {
  const Magnetization sym = semiclassical_magnetization(0.5);
  CHECK(sym.theta0 == 0.0);
  CHECK(sym.mx == 0.0);
  CHECK(sym.mz == 1.0);

  CHECK(semiclassical_magnetization(1.0).theta0 == doctest::Approx(0.0));

  const Magnetization broken = semiclassical_magnetization(2.0);
  CHECK(broken.theta0 == doctest::Approx(M_PI / 3.0).epsilon(1e-14));
  CHECK(broken.mx == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(broken.my == 0.0);
  CHECK(broken.mz == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mode frequency closed forms") {
  CHECK(hp_params(0.5, 4.0).omega_b == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(hp_params(2.0, 4.0).omega_b == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(hp_params(0.0, 4.0).omega_b == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(hp_params(1.0, 4.0), critical_point_error);
}

TEST_CASE("jump coefficients at Lambda=0.1, T=4") {
  const HpParams hp = hp_params(0.1, 4.0);
  CHECK(hp.b_plus == doctest::Approx(1.931630).epsilon(2e-6));
  CHECK(hp.b_minus == doctest::Approx(2.175130).epsilon(2e-6));
  CHECK(hp.b_minus * hp.b_minus - hp.b_plus * hp.b_plus ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coefficient identities over random parameters in both phases") {
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_real_distribution<double> ut(0.3, 20.0);
    const double lambda = random_lambda();
    const double temperature = ut(rng);
    const HpParams hp = hp_params(lambda, temperature);

    CHECK(std::abs(hp.b_minus * hp.b_minus - hp.b_plus * hp.b_plus - hp.mz) < 1e-12);
    const double expected_ratio =
        (4.0 * temperature - hp.omega_b) / (4.0 * temperature + hp.omega_b);
    CHECK(std::abs(hp.b_plus / hp.b_minus - expected_ratio) < 1e-12);
    CHECK(std::abs(std::tanh(hp.phi_b) - hp.epsilon) < 1e-12);
    const double closed_form =
        lambda < 1.0 ? std::sqrt(1.0 - lambda) : std::sqrt(lambda * lambda - 1.0);
    CHECK(hp.omega_b == doctest::Approx(closed_form).epsilon(1e-12));

    // simplified coefficients equal the raw Bogoliubov-angle expression
    const auto [bp_raw, bm_raw] = b_coefficients_from_angle(hp);
    CHECK(std::abs(hp.b_plus - bp_raw) < 1e-12 * std::max(1.0, bp_raw));
    CHECK(std::abs(hp.b_minus - bm_raw) < 1e-12 * std::max(1.0, bm_raw));
  }
}

TEST_CASE("perturbative eigenvalue lattice") {
  CHECK(liouvillian_eigenvalue(0, 0, 0.5, 0.05) == Complex(0.0, 0.0));
  const Complex l10 = liouvillian_eigenvalue(1, 0, 0.5, 0.05);
  CHECK(l10.real() == doctest::Approx(-0.025).epsilon(1e-14));
  CHECK(l10.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  for (int delta : {1, 2, 3}) {
    const Complex lp = liouvillian_eigenvalue(delta, 1, 0.7, 0.1);
    const Complex lm = liouvillian_eigenvalue(-delta, 1, 0.7, 0.1);
    CHECK(lp.real() == doctest::Approx(lm.real()));
    CHECK(lp.imag() == doctest::Approx(-lm.imag()));
  }
  // real part strictly decreasing in n
  for (int n = 0; n < 5; ++n)
    CHECK(liouvillian_eigenvalue(1, n + 1, 0.5, 0.05).real() <
          liouvillian_eigenvalue(1, n, 0.5, 0.05).real());
  CHECK_THROWS_AS(liouvillian_eigenvalue(1, -1, 0.5, 0.05), invalid_parameter_error);
}

TEST_CASE("stationary temperature") {
  const StationaryTemperature ts = stationary_temperature(0.1, 4.0);
  // independent route: direct logarithm of the coefficient ratio
  const HpParams hp = hp_params(0.1, 4.0);
  const double reference = -hp.omega_b / (2.0 * std::log(hp.b_plus / hp.b_minus));
  CHECK(ts.exact == doctest::Approx(reference).epsilon(1e-13));
  CHECK(ts.exact == doctest::Approx(3.99531).epsilon(3e-6));
  CHECK(std::abs(ts.exact - ts.series) < 2e-6);

  const StationaryTemperature cold = stationary_temperature(0.1, 0.5);
  CHECK(cold.exact == doctest::Approx(0.4599).epsilon(3e-4));

  // T -> infinity: ratio approaches 1
  CHECK(stationary_temperature(0.5, 1e6).exact / 1e6 == doctest::Approx(1.0).epsilon(1e-12));

  // series error bound for omega_b/T <= 0.3
  for (double temperature : {3.0, 5.0, 10.0}) {
    const StationaryTemperature s = stationary_temperature(0.5, temperature);
    const double u = std::sqrt(0.5) / temperature;
    CHECK(std::abs(s.exact - s.series) <= 2.0 * std::pow(u, 6) * temperature);
  }

  // log argument must stay positive: omega_b > 4T
  CHECK_THROWS_AS(stationary_temperature(3.0, 0.5), out_of_domain_error);
}

TEST_CASE("stationary Fock state") {
  // T_ss -> 0 limit: the Boltzmann ratio (B+/B-)^2 vanishes at 4T = omega_b,
  // so just above that point the state is the vacuum projector
  const double t_cold = 0.25 * std::sqrt(0.5) * (1.0 + 1e-7);
  const MatrixXcd cold = hp_stationary_state(0.5, t_cold, 16);
  CHECK(cold(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

  const MatrixXcd rho = hp_stationary_state(0.1, 4.0, 120);
  const HpParams hp = hp_params(0.1, 4.0);
  const double x = hp.boltzmann_ratio();
  double occupation = 0.0;
  for (int n = 0; n < rho.rows(); ++n) occupation += n * rho(n, n).real();
  CHECK(occupation == doctest::Approx(x / (1.0 - x)).epsilon(1e-8));
  CHECK(occupation == doctest::Approx(3.7311).epsilon(5e-5));
  for (int n = 0; n + 1 < rho.rows(); ++n)
    CHECK(rho(n + 1, n + 1).real() < rho(n, n).real());

  CHECK_THROWS_AS(hp_stationary_state(0.1, 4.0, 20), cutoff_error);
}

TEST_CASE("disentangling factors") {
  const double lambda = 0.1, temperature = 4.0, gamma = 0.15, S = 150.0;
  const HpParams hp = hp_params(lambda, temperature);
  const double x = hp.boltzmann_ratio();

  const Su11Factors at0 = su11_factors(lambda, temperature, gamma, 0.0, 0.1, S);
  CHECK(at0.a_plus == 0.0);
  CHECK(at0.a_zero == doctest::Approx(1.0));
  CHECK(at0.theta_prime ==
        doctest::Approx(0.1 * std::sqrt(S / 2.0) * std::exp(-0.5 * hp.phi_b)));

  const Su11Factors late = su11_factors(lambda, temperature, gamma, 500.0, 0.1, S);
  CHECK(late.a_plus == doctest::Approx(x).epsilon(1e-12));
  CHECK(x == doctest::Approx(0.788637).epsilon(3e-6));

  // tanh(psi) = 2 B+ B- / (B+^2 + B-^2) = (16T^2 - w^2)/(16T^2 + w^2)
  const double w2 = hp.omega_b * hp.omega_b;
  const double t2 = 16.0 * temperature * temperature;
  CHECK(std::tanh(late.psi) == doctest::Approx((t2 - w2) / (t2 + w2)).epsilon(1e-12));
  CHECK(std::tanh(late.psi) == doctest::Approx(0.992993).epsilon(2e-6));

  // A+ obeys the Riccati flow dA/dt = gamma (B-^2 A^2 - (B+^2 + B-^2) A + B+^2)
  const double bp2 = hp.b_plus * hp.b_plus, bm2 = hp.b_minus * hp.b_minus;
  for (double t : {0.5, 2.0, 10.0}) {
    const double h = 1e-5;
    const double ap = su11_factors(lambda, temperature, gamma, t + h, 0.1, S).a_plus;
    const double am = su11_factors(lambda, temperature, gamma, t - h, 0.1, S).a_plus;
    const double a = su11_factors(lambda, temperature, gamma, t, 0.1, S).a_plus;
    const double lhs = (ap - am) / (2.0 * h);
    const double rhs = gamma * (bm2 * a * a - (bp2 + bm2) * a + bp2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }

  // A+(t) rises monotonically to the stationary coefficient
  double prev = -1.0;
  for (double t : {0.0, 0.2, 1.0, 3.0, 10.0, 40.0, 200.0}) {
    const double a = su11_factors(lambda, temperature, gamma, t, 0.1, S).a_plus;
    CHECK(a > prev);
    CHECK(a <= x + 1e-12);
    prev = a;
  }

  // the printed numerator has a different, inconsistent fixed point
  const Su11Factors printed =
      su11_factors(lambda, temperature, gamma, 500.0, 0.1, S, APlusForm::printed);
  CHECK(printed.a_plus == doctest::Approx(hp.b_plus / (hp.b_minus * hp.b_minus)).epsilon(1e-12));
  CHECK(std::abs(printed.a_plus - x) > 0.3);

  CHECK_THROWS_AS(su11_factors(2.0, temperature, gamma, 1.0, 0.1, S),
                  unsupported_regime_error);
}

TEST_CASE("effective temperature of the instantaneous thermal state") {
  const double lambda = 0.1, temperature = 4.0;
  const HpParams hp = hp_params(lambda, temperature);
  const double x = hp.boltzmann_ratio();

  CHECK(thermal_factor(lambda, temperature, 0.15, 0.0) == 0.0);
  CHECK(effective_temperature(lambda, temperature, 0.15, 0.0) == 0.0);

  // gamma t = ln 2: the Boltzmann factor is x (1 - e^{-gamma t}) / (1 - x e^{-gamma t})
  const double gamma = 0.15;
  const double t_half = std::log(2.0) / gamma;
  const double expected = x * 0.5 / (1.0 - 0.5 * x);
  CHECK(thermal_factor(lambda, temperature, gamma, t_half) ==
        doctest::Approx(expected).epsilon(1e-12));

  const double t_late = 400.0;
  CHECK(effective_temperature(lambda, temperature, gamma, t_late) ==
        doctest::Approx(stationary_temperature(lambda, temperature).exact).epsilon(1e-9));
}

TEST_CASE("closed-form evolved state") {
  const double lambda = 0.1, temperature = 4.0, gamma = 0.15, S = 150.0;
  const double theta = 1.0 / std::sqrt(S);
  const int n_max = 120;

  // late time: matches the stationary Fock state
  const MatrixXcd late = evolved_state_hp(lambda, temperature, gamma, 300.0, theta, S, n_max);
  const MatrixXcd stat = hp_stationary_state(lambda, temperature, n_max);
  CHECK((late - stat).cwiseAbs().maxCoeff() < 1e-10);

  // theta = 0: no displacement, diagonal heating
  const MatrixXcd diag = evolved_state_hp(lambda, temperature, gamma, 3.0, 0.0, S, n_max);
  MatrixXcd offdiag = diag;
  offdiag.diagonal().setZero();
  CHECK(offdiag.cwiseAbs().maxCoeff() < 1e-14);

  // instantaneous Boltzmann ratio rho_11 / rho_00 = A+(t)
  const double t_half = std::log(2.0) / gamma;
  const MatrixXcd half = evolved_state_hp(lambda, temperature, gamma, t_half, 0.0, S, n_max);
  CHECK(half(1, 1).real() / half(0, 0).real() ==
        doctest::Approx(thermal_factor(lambda, temperature, gamma, t_half)).epsilon(1e-10));

  // validity at a generic time with displacement
  const MatrixXcd mid = evolved_state_hp(lambda, temperature, gamma, 2.5, theta, S, n_max);
  CHECK(std::abs(mid.trace().real() - 1.0) < 1e-12);
  CHECK((mid - mid.adjoint()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(mid, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("energy expectation curve") {
  const double lambda = 0.1, temperature = 4.0, gamma = 0.15, S = 150.0;
  const double theta = 1.0 / std::sqrt(S);
  const HpParams hp = hp_params(lambda, temperature);

  // late time, huge S: only the ground-state density remains (the residual
  // stationary heating term is of order 1/S)
  const EnergyExpectation late = energy_expectation_hp(lambda, temperature, gamma, 1e3, theta, 1e8);
  CHECK(late.finite_size == doctest::Approx(hp.ground_energy(1e8) / 1e8).epsilon(1e-7));

  // theta = 0, late time, finite S: ground energy plus stationary Bose heat
  const EnergyExpectation stat = energy_expectation_hp(lambda, temperature, gamma, 1e3, 0.0, S);
  const double x = hp.boltzmann_ratio();
  CHECK(stat.finite_size ==
        doctest::Approx(hp.ground_energy(S) / S + hp.omega_b * x / (1.0 - x) / S)
            .epsilon(1e-12));

  // the bulk curve never contains the 1/S heating term
  const EnergyExpectation early = energy_expectation_hp(lambda, temperature, gamma, 0.0, theta, S);
  CHECK(early.bulk == doctest::Approx(hp.delta0_slope +
                                      0.5 * theta * theta * hp.omega_b *
                                          std::exp(-hp.phi_b))
                          .epsilon(1e-12));
}

TEST_CASE("magnetization curves") {
  const double lambda = 0.1, temperature = 4.0, gamma = 0.15, S = 150.0;
  const double theta = 0.3;
  const MagnetizationCurve at0 = magnetization_hp(lambda, temperature, gamma, 0.0, theta, S);
  CHECK(at0.mx == doctest::Approx(theta).epsilon(1e-14));
  CHECK(at0.my == 0.0);

  const MagnetizationCurve late = magnetization_hp(lambda, temperature, gamma, 500.0, theta, S);
  CHECK(std::abs(late.mx) < 1e-12);
  CHECK(std::abs(late.my) < 1e-12);
  CHECK(late.mz < 1.0);
}
