#include "lmg/banded.hpp"

namespace lmg {

VectorXcd& BandedMatrix::diagonal(int offset) {
  auto it = diags_.find(offset);
  if (it == diags_.end()) {
    int len = dim_ - std::abs(offset);
    if (len <= 0) throw invalid_parameter_error("banded: offset outside matrix");
    it = diags_.emplace(offset, VectorXcd::Zero(len)).first;
  }
  return it->second;
}

const VectorXcd* BandedMatrix::find_diagonal(int offset) const {
  auto it = diags_.find(offset);
  return it == diags_.end() ? nullptr : &it->second;
}

BandedMatrix BandedMatrix::from_dense(const MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) throw invalid_parameter_error("banded: matrix not square");
  const int d = static_cast<int>(a.rows());
  BandedMatrix out(d);
  for (int o = -(d - 1); o <= d - 1; ++o) {
    const int len = d - std::abs(o);
    VectorXcd diag(len);
    double mx = 0.0;
    for (int k = 0; k < len; ++k) {
      const int r = o >= 0 ? k : k - o;
      const int c = o >= 0 ? k + o : k;
      diag[k] = a(r, c);
      mx = std::max(mx, std::abs(diag[k]));
    }
    if (mx > tol) out.diags_.emplace(o, std::move(diag));
  }
  return out;
}

MatrixXcd BandedMatrix::dense() const {
  MatrixXcd out = MatrixXcd::Zero(dim_, dim_);
  for (const auto& [o, diag] : diags_)
    for (int k = 0; k < diag.size(); ++k) {
      const int r = o >= 0 ? k : k - o;
      const int c = o >= 0 ? k + o : k;
      out(r, c) = diag[k];
    }
  return out;
}

BandedMatrix BandedMatrix::adjoint() const {
  BandedMatrix out(dim_);
  for (const auto& [o, diag] : diags_) out.diags_.emplace(-o, diag.conjugate());
  return out;
}

BandedMatrix BandedMatrix::operator*(const BandedMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw invalid_parameter_error("banded: dimension mismatch");
  BandedMatrix out(dim_);
  // (AB)(k, k+o1+o2) += A(k, k+o1) B(k+o1, k+o1+o2)
  for (const auto& [o1, d1] : diags_)
    for (const auto& [o2, d2] : rhs.diags_) {
      const int o = o1 + o2;
      if (std::abs(o) >= dim_) continue;
      VectorXcd& dst = out.diagonal(o);
      for (int k = 0; k < dim_; ++k) {
        const int mid = k + o1;
        const int end = k + o;
        if (mid < 0 || mid >= dim_ || end < 0 || end >= dim_) continue;
        // entry A(k, mid): stored in d1 at index min(k, mid)
        const Complex a = d1[o1 >= 0 ? k : mid];
        const Complex b = d2[o2 >= 0 ? mid : end];
        dst[o >= 0 ? k : end] += a * b;
      }
    }
  return out;
}

BandedMatrix& BandedMatrix::operator+=(const BandedMatrix& rhs) {
  if (dim_ != rhs.dim_) throw invalid_parameter_error("banded: dimension mismatch");
  for (const auto& [o, diag] : rhs.diags_) diagonal(o) += diag;
  return *this;
}

BandedMatrix& BandedMatrix::operator*=(Complex scale) {
  for (auto& [o, diag] : diags_) diag *= scale;
  return *this;
}

void BandedMatrix::apply_left(const MatrixXcd& x, MatrixXcd& out) const {
  out.setZero(dim_, x.cols());
  for (const auto& [o, diag] : diags_) {
    const int len = static_cast<int>(diag.size());
    const int r0 = o >= 0 ? 0 : -o;   // first output row touched
    const int c0 = r0 + o;            // matching input row
    const auto& darr = diag.array();
    for (int j = 0; j < x.cols(); ++j)
      out.col(j).segment(r0, len).array() += darr * x.col(j).segment(c0, len).array();
  }
}

void BandedMatrix::apply_right(const MatrixXcd& x, MatrixXcd& out) const {
  out.setZero(x.rows(), dim_);
  // (x B)(:, c) += x(:, c - o) * B(c - o, c)
  for (const auto& [o, diag] : diags_) {
    const int len = static_cast<int>(diag.size());
    for (int k = 0; k < len; ++k) {
      const int r = o >= 0 ? k : k - o;
      const int c = r + o;
      out.col(c) += diag[k] * x.col(r);
    }
  }
}

Complex BandedMatrix::trace_product(const MatrixXcd& x) const {
  // tr(B x) = sum_o sum_k B(k, k+o) x(k+o, k)
  Complex tr = 0.0;
  for (const auto& [o, diag] : diags_) {
    const int len = static_cast<int>(diag.size());
    for (int k = 0; k < len; ++k) {
      const int r = o >= 0 ? k : k - o;
      const int c = r + o;
      tr += diag[k] * x(c, r);
    }
  }
  return tr;
}

void BandedMatrix::prune(double tol) {
  for (auto it = diags_.begin(); it != diags_.end();) {
    if (it->second.cwiseAbs().maxCoeff() <= tol)
      it = diags_.erase(it);
    else
      ++it;
  }
}

}  // namespace lmg
