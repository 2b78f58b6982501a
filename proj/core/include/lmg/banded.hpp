#pragma once

#include <map>
#include <vector>

#include "lmg/types.hpp"

namespace lmg {

// Square complex matrix stored by diagonals.  The spin operators and every
// operator assembled from them (H_S, H_gamma, L, L^dag L) have at most five
// non-zero diagonals, which makes banded products O(d^2) instead of O(d^3).
// Offset o stores entries A(k, k+o) for k in the valid range.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  explicit BandedMatrix(int dim) : dim_(dim) {}

  int dim() const { return dim_; }

  // Diagonal at `offset`; created zero-filled on first access.
  VectorXcd& diagonal(int offset);
  const VectorXcd* find_diagonal(int offset) const;
  const std::map<int, VectorXcd>& diagonals() const { return diags_; }

  static BandedMatrix from_dense(const MatrixXcd& a, double tol = 0.0);
  MatrixXcd dense() const;

  BandedMatrix adjoint() const;
  BandedMatrix operator*(const BandedMatrix& rhs) const;
  BandedMatrix& operator+=(const BandedMatrix& rhs);
  BandedMatrix& operator*=(Complex scale);

  // out = this * x  (x dense, out preallocated same shape or resized)
  void apply_left(const MatrixXcd& x, MatrixXcd& out) const;
  // out = x * this
  void apply_right(const MatrixXcd& x, MatrixXcd& out) const;
  // trace(this * x)
  Complex trace_product(const MatrixXcd& x) const;

  // Drops numerically empty diagonals.
  void prune(double tol);

 private:
  int dim_ = 0;
  std::map<int, VectorXcd> diags_;
};

}  // namespace lmg
