#include "lmg/spin_algebra.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace lmg {

int spin_dimension(double S) {
  const double two_s = 2.0 * S;
  if (!(S >= 0.5) || !std::isfinite(S) ||
      std::abs(two_s - std::round(two_s)) > 1e-9)
    throw invalid_parameter_error("spin quantum number must be a half-integer >= 1/2");
  return static_cast<int>(std::lround(two_s)) + 1;
}

int ModelParams::dim() const { return spin_dimension(S); }

void ModelParams::validate() const {
  spin_dimension(S);
  if (!(Lambda >= 0.0) || !std::isfinite(Lambda))
    throw invalid_parameter_error("coupling Lambda must be >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw invalid_parameter_error("dissipation gamma must be >= 0");
  if (!(T > 0.0) || !std::isfinite(T))
    throw invalid_parameter_error("bath temperature T must be > 0");
}

SpinBands spin_bands(double S) {
  const int d = spin_dimension(S);
  SpinBands out{BandedMatrix(d), BandedMatrix(d), BandedMatrix(d)};

  VectorXcd& zdiag = out.sz.diagonal(0);
  for (int k = 0; k < d; ++k) zdiag[k] = S - k;

  // S_+ |S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>; with m = S - k this sits on
  // the +1 diagonal at row k-1, i.e. entry (k-1, k) for k = 1..d-1.
  VectorXcd raise(d - 1);
  for (int k = 1; k < d; ++k) {
    const double m = S - k;
    raise[k - 1] = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
  }
  const Complex half(0.5, 0.0), half_i(0.0, 0.5);
  out.sx.diagonal(+1) = half * raise;
  out.sx.diagonal(-1) = half * raise;
  out.sy.diagonal(+1) = -half_i * raise;
  out.sy.diagonal(-1) = half_i * raise;
  return out;
}

SpinOperators spin_operators(double S) {
  SpinBands b = spin_bands(S);
  return {b.sx.dense(), b.sy.dense(), b.sz.dense()};
}

MatrixXcd casimir(double S) {
  SpinOperators ops = spin_operators(S);
  return ops.sx * ops.sx + ops.sy * ops.sy + ops.sz * ops.sz;
}

VectorXcd parity_diagonal(double S) {
  const int d = spin_dimension(S);
  VectorXcd p(d);
  for (int k = 0; k < d; ++k) {
    const double m = S - k;
    p[k] = std::exp(Complex(0.0, M_PI * m));
    // snap to the exact unit-circle values; exp(i pi m) is always a 4th root
    // of unity for half-integer m
    const double re = std::round(p[k].real());
    const double im = std::round(p[k].imag());
    if (std::abs(p[k].real() - re) < 1e-12 && std::abs(p[k].imag() - im) < 1e-12)
      p[k] = Complex(re, im);
  }
  return p;
}

MatrixXcd parity_operator(double S) {
  return parity_diagonal(S).asDiagonal();
}

MatrixXcd rotation_y(double S, double theta) {
  if (!std::isfinite(theta)) throw invalid_parameter_error("rotation angle must be finite");
  SpinOperators ops = spin_operators(S);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(ops.sy);
  if (es.info() != Eigen::Success) throw solver_error("rotation_y: eigensolver failed");
  const VectorXcd phases =
      (Complex(0.0, -theta) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace lmg
