#pragma once

#include <string>
#include <vector>

#include "lmg/types.hpp"

namespace lmg {

// Exact spectral data of the quadratic bosonic Lindbladian, valid at any
// dissipation strength: rapidities beta+- and the stationary covariance
// matrix Z (complex symmetric, Z11 = Z22).
struct ThirdQuantResult {
  Complex beta_plus, beta_minus;
  Complex z11;  // <bb>
  double z12;   // <b^dag b>, real
};

// beta+- = (m_z gamma +- i sqrt(4 omega_b^2 - m_z^2 gamma^2)) / 4 with the
// principal square root; above m_z gamma = 2 omega_b both rapidities are
// real, and at the exceptional point they coincide.
std::pair<Complex, Complex> rapidities(double Lambda, double gamma);

// Lindblad eigenvalue -2 (beta+ n+ + beta- n-) for non-negative integers n+-.
Complex eigenvalue_lattice(double Lambda, double gamma, int n_plus, int n_minus);

ThirdQuantResult z_matrix(double Lambda, double gamma, double T);

// Factors of a normally-unordered monomial in b / b^dag.
enum class BosonFactor { create, annihilate };

// Expectation value of a product of b / b^dag factors in the zero-mean
// Gaussian stationary state, by Wick contraction over the pair moments
// <b^dag b> = Z12, <bb> = Z11, <b^dag b^dag> = conj(Z11), <b b^dag> = Z12+1.
// Odd-order monomials vanish.
Complex gaussian_moment(const ThirdQuantResult& z,
                        const std::vector<BosonFactor>& monomial);

// Convenience: "+" = b^dag, "-" = b, e.g. "+-" is <b^dag b>.
Complex gaussian_moment(const ThirdQuantResult& z, const std::string& monomial);

}  // namespace lmg
