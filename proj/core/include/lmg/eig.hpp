#pragma once

#include "lmg/types.hpp"

namespace lmg {

struct EigResult {
  VectorXcd values;
  MatrixXcd vectors;  // column k is the right eigenvector of values[k]
};

// General complex eigendecomposition (LAPACK zgeev). Destroys a copy.
EigResult eig_complex(MatrixXcd a);

// General real eigendecomposition (LAPACK dgeev); conjugate pairs are
// expanded into complex eigenvector columns.  Real eigenvalues come back
// with exactly zero imaginary part, which matters when testing whether a
// Liouvillian eigenvalue has become real.
EigResult eig_real(MatrixXd a);

// Solves a x = b by LU (LAPACK zgesv). Destroys a copy of a.
VectorXcd solve_linear(MatrixXcd a, VectorXcd b);

// Lowest `count` eigenpairs of a real symmetric tridiagonal matrix
// (LAPACK dstevr). diag has size n, off has size n-1.
void tridiag_lowest(const VectorXd& diag, const VectorXd& off, int count,
                    VectorXd& values, MatrixXd& vectors);

}  // namespace lmg
