#include "lmg/third_quantization.hpp"

#include <cmath>

#include "lmg/hp_analytic.hpp"

namespace lmg {

std::pair<Complex, Complex> rapidities(double Lambda, double gamma) {
  if (!(gamma >= 0.0)) throw invalid_parameter_error("gamma must be >= 0");
  const HpParams hp = hp_params(Lambda, 1.0);
  const double mg = hp.mz * gamma;
  const Complex root = std::sqrt(Complex(4.0 * hp.omega_b * hp.omega_b - mg * mg, 0.0));
  const Complex i(0.0, 1.0);
  return {0.25 * (mg + i * root), 0.25 * (mg - i * root)};
}

Complex eigenvalue_lattice(double Lambda, double gamma, int n_plus, int n_minus) {
  if (n_plus < 0 || n_minus < 0)
    throw invalid_parameter_error("mode occupations must be non-negative integers");
  const auto [bp, bm] = rapidities(Lambda, gamma);
  return -2.0 * (bp * double(n_plus) + bm * double(n_minus));
}

ThirdQuantResult z_matrix(double Lambda, double gamma, double T) {
  if (!(gamma >= 0.0)) throw invalid_parameter_error("gamma must be >= 0");
  if (!(T > 0.0)) throw invalid_parameter_error("T must be > 0");
  const HpParams hp = hp_params(Lambda, T);
  const double mg = hp.mz * gamma, w = hp.omega_b;
  const double denom = 32.0 * T * w;
  ThirdQuantResult out;
  auto [bp, bm] = rapidities(Lambda, gamma);
  out.beta_plus = bp;
  out.beta_minus = bm;
  out.z11 = mg * Complex(mg, -2.0 * w) / denom;
  out.z12 = (mg * mg + 2.0 * std::pow(4.0 * T - w, 2)) / denom;
  return out;
}

Complex gaussian_moment(const ThirdQuantResult& z,
                        const std::vector<BosonFactor>& monomial) {
  const size_t n = monomial.size();
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  auto contraction = [&z](BosonFactor a, BosonFactor b) -> Complex {
    using F = BosonFactor;
    if (a == F::create && b == F::create) return std::conj(z.z11);
    if (a == F::annihilate && b == F::annihilate) return z.z11;
    if (a == F::create && b == F::annihilate) return z.z12;
    return z.z12 + 1.0;  // <b b^dag>
  };
  // Wick's theorem, contracting the first factor with each later one while
  // preserving operator order inside every pair.
  std::function<Complex(std::vector<BosonFactor>)> wick =
      [&](std::vector<BosonFactor> f) -> Complex {
    if (f.empty()) return 1.0;
    Complex sum = 0.0;
    for (size_t j = 1; j < f.size(); ++j) {
      std::vector<BosonFactor> rest;
      rest.reserve(f.size() - 2);
      for (size_t k = 1; k < f.size(); ++k)
        if (k != j) rest.push_back(f[k]);
      sum += contraction(f[0], f[j]) * wick(std::move(rest));
    }
    return sum;
  };
  return wick(monomial);
}

Complex gaussian_moment(const ThirdQuantResult& z, const std::string& monomial) {
  std::vector<BosonFactor> factors;
  factors.reserve(monomial.size());
  for (char c : monomial) {
    if (c == '+')
      factors.push_back(BosonFactor::create);
    else if (c == '-')
      factors.push_back(BosonFactor::annihilate);
    else
      throw invalid_parameter_error("monomial characters must be '+' or '-'");
  }
  return gaussian_moment(z, factors);
}

}  // namespace lmg
