#pragma once

#include "lmg/types.hpp"

namespace lmg {

// Vectorization convention, fixed project-wide: rho_{ij} sits at flat index
// i*d + j (ket (x) ket ordering).  Under this convention
//   vec(A rho B) = (A (x) B^T) vec(rho)
// with ^T the ordinary matrix transpose.

inline VectorXcd vec(const MatrixXcd& rho) {
  const int d = static_cast<int>(rho.rows());
  VectorXcd v(static_cast<Eigen::Index>(d) * rho.cols());
  for (int i = 0; i < d; ++i)
    v.segment(static_cast<Eigen::Index>(i) * rho.cols(), rho.cols()) = rho.row(i);
  return v;
}

inline MatrixXcd unvec(const VectorXcd& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d)
    throw invalid_parameter_error("unvec: size mismatch");
  MatrixXcd rho(d, d);
  for (int i = 0; i < d; ++i) rho.row(i) = v.segment(static_cast<Eigen::Index>(i) * d, d);
  return rho;
}

// Kronecker product in the same index convention:
// (A (x) B)(i*p+k, j*q+l) = A(i,j) B(k,l).
inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  MatrixXcd out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

}  // namespace lmg
