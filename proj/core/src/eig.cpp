#include "lmg/eig.hpp"

#include <complex>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace lmg {

EigResult eig_complex(MatrixXcd a) {
  if (a.rows() != a.cols()) throw invalid_parameter_error("eig: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, out.values.data(), nullptr, 1,
      out.vectors.data(), n);
  if (info != 0) throw solver_error("zgeev failed, info=" + std::to_string(info));
  return out;
}

EigResult eig_real(MatrixXd a) {
  if (a.rows() != a.cols()) throw invalid_parameter_error("eig: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  VectorXd wr(n), wi(n);
  MatrixXd vr(n, n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n,
                                  wr.data(), wi.data(), nullptr, 1, vr.data(), n);
  if (info != 0) throw solver_error("dgeev failed, info=" + std::to_string(info));

  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (lapack_int j = 0; j < n; ++j) {
    out.values[j] = Complex(wr[j], wi[j]);
    if (wi[j] > 0.0 && j + 1 < n) {
      // dgeev packs the conjugate pair (v, conj(v)) as two real columns
      out.vectors.col(j) = vr.col(j) + Complex(0, 1) * vr.col(j + 1);
      out.vectors.col(j + 1) = vr.col(j) - Complex(0, 1) * vr.col(j + 1);
      out.values[j + 1] = Complex(wr[j + 1], wi[j + 1]);
      ++j;
    } else {
      out.vectors.col(j) = vr.col(j).cast<Complex>();
    }
  }
  return out;
}

VectorXcd solve_linear(MatrixXcd a, VectorXcd b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw invalid_parameter_error("solve: dimension mismatch");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, 1, a.data(), n,
                                  ipiv.data(), b.data(), n);
  if (info != 0) throw solver_error("zgesv failed, info=" + std::to_string(info));
  return b;
}

void tridiag_lowest(const VectorXd& diag, const VectorXd& off, int count,
                    VectorXd& values, MatrixXd& vectors) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  if (off.size() != n - 1 && !(n == 1 && off.size() == 0))
    throw invalid_parameter_error("tridiag: off-diagonal size mismatch");
  if (count < 1 || count > n) throw invalid_parameter_error("tridiag: bad count");
  VectorXd d = diag;
  VectorXd e(std::max<lapack_int>(n - 1, 1));
  if (n > 1) e.head(n - 1) = off;
  lapack_int found = 0;
  values.resize(n);
  vectors.resize(n, count);
  std::vector<lapack_int> isuppz(2 * std::max(1, count));
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(),
                                   e.data(), 0.0, 0.0, 1, count, 0.0, &found,
                                   values.data(), vectors.data(), n,
                                   isuppz.data());
  if (info != 0) throw solver_error("dstevr failed, info=" + std::to_string(info));
  if (found != count) throw solver_error("dstevr: fewer eigenvalues than requested");
  values.conservativeResize(count);
}

}  // namespace lmg
