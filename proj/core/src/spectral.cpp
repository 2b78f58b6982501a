#include "lmg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "lmg/eig.hpp"
#include "lmg/spin_algebra.hpp"
#include "lmg/vec.hpp"

namespace lmg {

namespace {

std::vector<std::pair<int, int>> full_pairs(int d) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pairs.emplace_back(i, j);
  return pairs;
}

int infer_space_dim(const std::vector<std::pair<int, int>>& pairs) {
  int d = 0;
  for (const auto& [i, j] : pairs) d = std::max({d, i + 1, j + 1});
  return d;
}

void sort_result(SpectrumResult& r) {
  std::vector<int> order(r.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Complex la = r.eigenvalues[a], lb = r.eigenvalues[b];
    if (la.real() != lb.real()) return la.real() > lb.real();
    if (std::abs(la.imag()) != std::abs(lb.imag()))
      return std::abs(la.imag()) < std::abs(lb.imag());
    return la.imag() > lb.imag();
  });
  VectorXcd values(r.eigenvalues.size());
  MatrixXcd vectors(r.eigenvectors.rows(), r.eigenvectors.cols());
  VectorXi sectors(r.sectors.size());
  for (int k = 0; k < values.size(); ++k) {
    values[k] = r.eigenvalues[order[k]];
    vectors.col(k) = r.eigenvectors.col(order[k]);
    sectors[k] = r.sectors[order[k]];
  }
  r.eigenvalues = std::move(values);
  r.eigenvectors = std::move(vectors);
  r.sectors = std::move(sectors);
}

SpectrumResult diagonalize_sector_real(const MatrixXcd& superop,
                                       const VectorXcd& parity_diag,
                                       const std::vector<std::pair<int, int>>& pairs);

SpectrumResult diagonalize_dense_complex(const MatrixXcd& superop,
                                         const VectorXcd& parity_diag,
                                         const std::vector<std::pair<int, int>>& pairs) {
  const int n = static_cast<int>(superop.rows());
  EigResult eig = eig_complex(superop);
  SpectrumResult out;
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors = std::move(eig.vectors);
  out.sectors.resize(n);
  out.pairs = pairs;
  out.space_dim = infer_space_dim(pairs);
  for (int k = 0; k < n; ++k) {
    const auto v = out.eigenvectors.col(k);
    Complex num = 0.0;
    double den = 0.0;
    for (int r = 0; r < n; ++r) {
      num += std::conj(v[r]) * parity_diag[r] * v[r];
      den += std::norm(v[r]);
    }
    const double ratio = num.real() / den;
    if (std::abs(ratio) < 0.9) {
      // mixed eigenvector (degenerate cross-sector pair); redo the whole
      // problem with explicit sector projections
      return diagonalize_sector_real(superop, parity_diag, pairs);
    }
    out.sectors[k] = ratio > 0.0 ? 1 : -1;
  }
  sort_result(out);
  return out;
}

SpectrumResult diagonalize_sector_real(const MatrixXcd& superop,
                                       const VectorXcd& parity_diag,
                                       const std::vector<std::pair<int, int>>& pairs) {
  const int n = static_cast<int>(superop.rows());
  const int d = infer_space_dim(pairs);

  Eigen::MatrixXi pair_index = Eigen::MatrixXi::Constant(d, d, -1);
  for (int r = 0; r < n; ++r) pair_index(pairs[r].first, pairs[r].second) = r;

  // cross-sector coupling must vanish for the split to be exact
  const double scale = superop.cwiseAbs().maxCoeff();

  SpectrumResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = MatrixXcd::Zero(n, n);
  out.sectors.resize(n);
  out.pairs = pairs;
  out.space_dim = d;
  int filled = 0;

  for (int sector : {+1, -1}) {
    std::vector<int> coords;
    for (int r = 0; r < n; ++r) {
      const double p = parity_diag[r].real();
      if (std::abs(parity_diag[r].imag()) > 1e-12 || std::abs(std::abs(p) - 1.0) > 1e-12)
        throw invalid_parameter_error("parity diagonal must have entries +-1");
      if ((p > 0 ? 1 : -1) == sector) coords.push_back(r);
    }
    const int ns = static_cast<int>(coords.size());
    if (ns == 0) continue;
    std::vector<int> local(n, -1);
    for (int a = 0; a < ns; ++a) local[coords[a]] = a;

    MatrixXcd block(ns, ns);
    for (int cc = 0; cc < ns; ++cc)
      for (int rr = 0; rr < ns; ++rr) block(rr, cc) = superop(coords[rr], coords[cc]);

    for (int r : coords)
      for (int c = 0; c < n; ++c)
        if (local[c] < 0 && std::abs(superop(r, c)) > 1e-9 * std::max(scale, 1.0))
          throw solver_error("superoperator does not commute with the parity superoperator");

    // Hermitian operator basis inside the sector: u_ii stays, off-diagonal
    // units combine into (u_ij + u_ji)/sqrt2 and i(u_ij - u_ji)/sqrt2.  In
    // this basis a Hermiticity-preserving superoperator is real, so dgeev
    // applies and real eigenvalues come out with exactly zero imaginary part.
    struct BasisElem {
      int la, lb;       // local coordinates (lb = -1 for a single entry)
      Complex wa, wb;
    };
    std::vector<BasisElem> herm;
    herm.reserve(ns);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < ns; ++a) {
      const auto [i, j] = pairs[coords[a]];
      if (i == j) {
        herm.push_back({a, -1, 1.0, 0.0});
      } else if (i < j) {
        const int r_ji = pair_index(j, i);
        if (r_ji < 0 || local[r_ji] < 0)
          throw solver_error("operator basis is not closed under transposition");
        const int b = local[r_ji];
        herm.push_back({a, b, inv_sqrt2, inv_sqrt2});
        herm.push_back({a, b, Complex(0, inv_sqrt2), Complex(0, -inv_sqrt2)});
      }
    }
    if (static_cast<int>(herm.size()) != ns)
      throw solver_error("hermitian basis construction failed");

    MatrixXcd mc(ns, ns);
    for (int a = 0; a < ns; ++a) {
      mc.col(a) = herm[a].wa * block.col(herm[a].la);
      if (herm[a].lb >= 0) mc.col(a) += herm[a].wb * block.col(herm[a].lb);
    }
    MatrixXcd hb(ns, ns);
    for (int a = 0; a < ns; ++a) {
      hb.row(a) = std::conj(herm[a].wa) * mc.row(herm[a].la);
      if (herm[a].lb >= 0) hb.row(a) += std::conj(herm[a].wb) * mc.row(herm[a].lb);
    }
    const double imag_norm = hb.imag().cwiseAbs().maxCoeff();
    if (imag_norm > 1e-8 * std::max(1.0, hb.real().cwiseAbs().maxCoeff()))
      throw solver_error("superoperator is not Hermiticity-preserving");

    EigResult eig = eig_real(hb.real());
    for (int k = 0; k < ns; ++k) {
      out.eigenvalues[filled] = eig.values[k];
      out.sectors[filled] = sector;
      for (int a = 0; a < ns; ++a) {
        const Complex va = eig.vectors(a, k);
        out.eigenvectors(coords[herm[a].la], filled) += herm[a].wa * va;
        if (herm[a].lb >= 0)
          out.eigenvectors(coords[herm[a].lb], filled) += herm[a].wb * va;
      }
      ++filled;
    }
  }
  if (filled != n) throw solver_error("sector diagonalization lost eigenvalues");
  sort_result(out);
  return out;
}

}  // namespace

SpectrumResult diagonalize(const MatrixXcd& superop, const VectorXcd& parity_diag,
                           std::vector<std::pair<int, int>> pairs,
                           DiagonalizeMethod method) {
  const int n = static_cast<int>(superop.rows());
  if (superop.cols() != n) throw invalid_parameter_error("superoperator not square");
  if (parity_diag.size() != n)
    throw invalid_parameter_error("parity diagonal size mismatch");
  if (pairs.empty()) {
    const int d = static_cast<int>(std::lround(std::sqrt(double(n))));
    if (d * d != n)
      throw invalid_parameter_error("cannot infer operator-basis pairs");
    pairs = full_pairs(d);
  }
  if (static_cast<int>(pairs.size()) != n)
    throw invalid_parameter_error("pair list size mismatch");

  if (method == DiagonalizeMethod::automatic)
    method = n <= 2000 ? DiagonalizeMethod::dense_complex : DiagonalizeMethod::sector_real;
  return method == DiagonalizeMethod::dense_complex
             ? diagonalize_dense_complex(superop, parity_diag, pairs)
             : diagonalize_sector_real(superop, parity_diag, pairs);
}

SpectrumResult diagonalize(const MatrixXcd& superop, const MatrixXcd& parity,
                           DiagonalizeMethod method) {
  const int n = static_cast<int>(parity.rows());
  double off = 0.0;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (r != c) off = std::max(off, std::abs(parity(r, c)));
  if (off > 1e-12)
    throw invalid_parameter_error("parity superoperator must be diagonal in the vec basis");
  return diagonalize(superop, parity.diagonal(), {}, method);
}

SpectrumResult diagonalize(const RestrictedSuperoperator& rsup, DiagonalizeMethod method) {
  return diagonalize(rsup.matrix, rsup.parity, rsup.pairs, method);
}

std::vector<int> reporting_indices(const SpectrumResult& result, double tol) {
  std::vector<int> keep;
  const int n = static_cast<int>(result.eigenvalues.size());
  const double scale = n ? result.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double match = 1e-8 * scale + tol;
  for (int k = 0; k < n; ++k) {
    const Complex lk = result.eigenvalues[k];
    if (lk.imag() >= -tol) {
      keep.push_back(k);
      continue;
    }
    bool has_partner = false;
    for (int j = 0; j < n && !has_partner; ++j)
      if (j != k && result.sectors[j] == result.sectors[k] &&
          std::abs(result.eigenvalues[j] - std::conj(lk)) <= match &&
          result.eigenvalues[j].imag() > 0.0)
        has_partner = true;
    if (!has_partner) keep.push_back(k);
  }
  return keep;
}

MatrixXcd stationary_state(const SpectrumResult& result, double zero_tol) {
  int found = -1;
  int zero_plus = 0;
  for (int k = 0; k < result.eigenvalues.size(); ++k) {
    if (std::abs(result.eigenvalues[k]) <= zero_tol && result.sectors[k] == 1) {
      ++zero_plus;
      if (found < 0) found = k;
    }
  }
  if (found < 0) throw solver_error("no zero eigenvalue within tolerance");
  if (zero_plus > 1)
    throw solver_error("zero eigenvalue is not unique in the even sector");

  const int d = result.space_dim;
  MatrixXcd rho = MatrixXcd::Zero(d, d);
  for (size_t r = 0; r < result.pairs.size(); ++r)
    rho(result.pairs[r].first, result.pairs[r].second) =
        result.eigenvectors(static_cast<Eigen::Index>(r), found);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12 * result.eigenvectors.col(found).norm())
    throw solver_error("kernel vector is traceless; not a stationary state");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw solver_error("stationary state has a negative eigenvalue beyond tolerance");
  return rho;
}

PairReport detect_pairs(const SpectrumResult& result, double tol, int leading) {
  std::vector<int> plus, minus;
  for (int k = 0; k < result.eigenvalues.size(); ++k) {
    if (result.sectors[k] == 1 && static_cast<int>(plus.size()) < leading)
      plus.push_back(k);
    if (result.sectors[k] == -1 && static_cast<int>(minus.size()) < leading)
      minus.push_back(k);
  }
  std::vector<bool> used_p(plus.size(), false), used_m(minus.size(), false);
  PairReport report;
  while (true) {
    double best = std::numeric_limits<double>::infinity();
    int bp = -1, bm = -1;
    for (size_t a = 0; a < plus.size(); ++a) {
      if (used_p[a]) continue;
      for (size_t b = 0; b < minus.size(); ++b) {
        if (used_m[b]) continue;
        const double gap =
            std::abs(result.eigenvalues[plus[a]] - result.eigenvalues[minus[b]]);
        if (gap < best) {
          best = gap;
          bp = static_cast<int>(a);
          bm = static_cast<int>(b);
        }
      }
    }
    if (bp < 0 || best > tol) break;
    used_p[bp] = used_m[bm] = true;
    report.entries.push_back({plus[bp], minus[bm], best});
  }
  return report;
}

std::vector<GapScanRow> gap_scan(const ModelParams& base,
                                 const std::vector<double>& lambdas, int K,
                                 std::optional<double> band_quanta) {
  if (lambdas.empty()) throw invalid_parameter_error("gap_scan: empty coupling grid");
  std::vector<GapScanRow> rows;
  rows.reserve(lambdas.size());
  for (double lam : lambdas) {
    ModelParams p = base;
    p.Lambda = lam;
    const SpectrumResult spec = diagonalize(restricted_superoperator(p, K, band_quanta));
    const double zero_tol = 1e-8;
    GapScanRow row{lam, Complex(0, 0), Complex(0, 0)};
    bool got_p1 = false, got_m0 = false;
    for (int k = 0; k < spec.eigenvalues.size(); ++k) {
      const Complex lv = spec.eigenvalues[k];
      if (!got_p1 && spec.sectors[k] == 1 && std::abs(lv) > zero_tol) {
        row.lambda_p1 = lv;
        got_p1 = true;
      }
      if (!got_m0 && spec.sectors[k] == -1) {
        row.lambda_m0 = lv;
        got_m0 = true;
      }
      if (got_p1 && got_m0) break;
    }
    if (!got_p1 || !got_m0) throw solver_error("gap_scan: sector eigenvalues missing");
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::pair<double, double>> sx_basis_diagonal(const MatrixXcd& rho,
                                                         double S) {
  const int d = spin_dimension(S);
  if (rho.rows() != d || rho.cols() != d)
    throw invalid_parameter_error("sx_basis_diagonal: dimension mismatch");
  // S_x is real symmetric tridiagonal with zero diagonal
  VectorXd diag = VectorXd::Zero(d), off(std::max(d - 1, 0));
  for (int k = 1; k < d; ++k) {
    const double m = S - k;
    off[k - 1] = 0.5 * std::sqrt(S * (S + 1.0) - m * (m + 1.0));
  }
  VectorXd values;
  MatrixXd w;
  tridiag_lowest(diag, off, d, values, w);
  std::vector<std::pair<double, double>> out(d);
  const MatrixXcd rotated = w.transpose().cast<Complex>() * rho * w.cast<Complex>();
  for (int k = 0; k < d; ++k) out[k] = {values[k], rotated(k, k).real()};
  return out;
}

MatrixXcd orient_positive_sx(const MatrixXcd& op, double S) {
  double balance = 0.0;
  for (const auto& [sx, wgt] : sx_basis_diagonal(op, S)) balance += sx * wgt;
  return balance >= 0.0 ? op : MatrixXcd(-op);
}

MatrixXcd symmetry_broken_combination(const MatrixXcd& rho_plus,
                                      const MatrixXcd& rho_minus) {
  const double plus_norm = rho_plus.norm();
  if (rho_minus.norm() <= 1e-14 * std::max(plus_norm, 1.0)) return rho_plus;

  // Hermitize e^{-i phi} rho_minus with the phase that maximizes the
  // Hermitian content (an eigenvector is only defined up to a phase).
  const Complex c2 = (rho_minus.adjoint() * rho_minus.adjoint()).trace();
  const double phi = std::abs(c2) > 0.0 ? -0.5 * std::arg(c2) : 0.0;
  const MatrixXcd rotated = std::exp(Complex(0, -phi)) * rho_minus;
  MatrixXcd h = 0.5 * (rotated + rotated.adjoint());
  if ((rotated - h).norm() > 1e-6 * rho_minus.norm())
    throw solver_error("odd-sector operator is not Hermitizable");
  h /= h.norm();
  if (std::abs(h.trace()) > 1e-8)
    throw invalid_parameter_error("odd-sector operator is not traceless");
  h *= plus_norm;

  auto min_eig = [&](double c) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho_plus + c * h,
                                                Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };
  const double floor_tol = -1e-10;
  if (min_eig(0.0) < -1e-9)
    throw invalid_parameter_error("rho_plus is not positive semidefinite");

  double lo = 0.0, hi = 1.0;
  while (min_eig(hi) >= floor_tol) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) throw solver_error("admissible weight did not saturate");
  }
  for (int it = 0; it < 120 && (hi - lo) > 1e-13 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_eig(mid) >= floor_tol ? lo : hi) = mid;
  }
  return rho_plus + lo * h;
}

}  // namespace lmg
