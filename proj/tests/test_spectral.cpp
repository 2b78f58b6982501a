#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lmg/dynamics.hpp>
#include <lmg/hp_analytic.hpp>
#include <lmg/lmg_model.hpp>
#include <lmg/spectral.hpp>
#include <lmg/vec.hpp>

using namespace lmg;

namespace {

double trace_distance(const MatrixXcd& a, const MatrixXcd& b) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST_CASE("the two diagonalization paths agree") {
  ModelParams p{4.0, 1.5, 0.2, 4.0};
  const MatrixXcd sup = lindblad_superoperator(p);
  const VectorXcd parity = parity_superoperator_diagonal(p.S);
  const SpectrumResult dense = diagonalize(sup, parity, {}, DiagonalizeMethod::dense_complex);
  const SpectrumResult split = diagonalize(sup, parity, {}, DiagonalizeMethod::sector_real);

  REQUIRE(dense.eigenvalues.size() == split.eigenvalues.size());
  for (int k = 0; k < dense.eigenvalues.size(); ++k) {
    double best = 1e18;
    int match = -1;
    for (int j = 0; j < split.eigenvalues.size(); ++j) {
      const double dist = std::abs(dense.eigenvalues[k] - split.eigenvalues[j]);
      if (dist < best) {
        best = dist;
        match = j;
      }
    }
    CHECK(best < 1e-9);
    CHECK(dense.sectors[k] == split.sectors[match]);
  }
}

TEST_CASE("spectrum structure of the dissipative generator") {
  ModelParams p{4.0, 1.5, 0.2, 4.0};
  const MatrixXcd sup = lindblad_superoperator(p);
  const VectorXcd parity = parity_superoperator_diagonal(p.S);
  const SpectrumResult spec = diagonalize(sup, parity, {}, DiagonalizeMethod::sector_real);
  const int n = static_cast<int>(spec.eigenvalues.size());

  // closed left half-plane and a unique kernel in the even sector
  int zeros_plus = 0;
  for (int k = 0; k < n; ++k) {
    CHECK(spec.eigenvalues[k].real() <= 1e-8);
    if (std::abs(spec.eigenvalues[k]) <= 1e-8 && spec.sectors[k] == 1) ++zeros_plus;
  }
  CHECK(zeros_plus == 1);

  // closed under conjugation
  for (int k = 0; k < n; ++k) {
    if (std::abs(spec.eigenvalues[k].imag()) < 1e-10) continue;
    double best = 1e18;
    for (int j = 0; j < n; ++j)
      best = std::min(best,
                      std::abs(spec.eigenvalues[j] - std::conj(spec.eigenvalues[k])));
    CHECK(best < 1e-8);
  }

  // sector labels reproduce the parity action on eigenvectors
  for (int k = 0; k < n; ++k) {
    const VectorXcd v = spec.eigenvectors.col(k);
    const VectorXcd pv = parity.asDiagonal() * v;
    CHECK((pv - double(spec.sectors[k]) * v).norm() < 1e-6 * v.norm());
  }

  // odd-sector eigenoperators are traceless
  for (int k = 0; k < n; ++k) {
    if (spec.sectors[k] != -1) continue;
    const MatrixXcd op = unvec(spec.eigenvectors.col(k), spec.space_dim);
    CHECK(std::abs(op.trace()) < 1e-10 * spec.eigenvectors.col(k).norm());
  }

  // reporting view keeps one member of every conjugate pair
  const std::vector<int> keep = reporting_indices(spec);
  for (int k : keep) CHECK(spec.eigenvalues[k].imag() >= -1e-12);
  CHECK(keep.size() < static_cast<size_t>(n));
}

TEST_CASE("stationary state is the Lindblad fixed point") {
  ModelParams p{4.0, 1.5, 0.2, 4.0};
  const MatrixXcd sup = lindblad_superoperator(p);
  const SpectrumResult spec = diagonalize(sup, parity_superoperator_diagonal(p.S));
  const MatrixXcd rho = stationary_state(spec);

  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  CHECK((rho - rho.adjoint()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-8);
  CHECK(lindblad_action(p, rho).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("stationary state approaches the Gibbs form at weak dissipation") {
  ModelParams p{100.0, 0.5, 0.01, 4.0};
  const int K = 41;
  const SpectrumResult spec = diagonalize(restricted_superoperator(p, K));
  const MatrixXcd rho_k = stationary_state(spec);
  const RestrictedBasis basis = restricted_basis(p, K);
  const MatrixXcd rho = basis.lift(rho_k);

  // Gibbs state at the stationary temperature, full spin space
  const double t_ss = stationary_temperature(p.Lambda, p.T).exact;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> hs(hamiltonian_system(p));
  VectorXd weights =
      ((hs.eigenvalues().array() - hs.eigenvalues()[0]) / -t_ss).exp();
  weights /= weights.sum();
  const MatrixXcd gibbs = hs.eigenvectors() *
                          weights.cast<Complex>().asDiagonal() *
                          hs.eigenvectors().adjoint();
  CHECK(trace_distance(rho, gibbs) < 0.05);
}

TEST_CASE("near-degenerate sector pairs") {
  // artificial duplicated spectrum: everything pairs at zero gap
  SpectrumResult fake;
  fake.eigenvalues.resize(6);
  fake.sectors.resize(6);
  fake.eigenvectors = MatrixXcd::Identity(6, 6);
  fake.space_dim = 0;
  for (int k = 0; k < 3; ++k) {
    fake.eigenvalues[2 * k] = Complex(-0.1 * k, 0.3 * k);
    fake.eigenvalues[2 * k + 1] = fake.eigenvalues[2 * k];
    fake.sectors[2 * k] = 1;
    fake.sectors[2 * k + 1] = -1;
  }
  const PairReport all = detect_pairs(fake, 1e-15);
  CHECK(all.entries.size() == 3);
  for (const auto& e : all.entries) CHECK(e.gap == 0.0);

  // symmetric phase: clear sector separation, no pairs at tight tolerance
  ModelParams sym{60.0, 0.5, 0.2, 4.0};
  const SpectrumResult s1 = diagonalize(restricted_superoperator(sym, 21));
  CHECK(detect_pairs(s1, 1e-4).entries.empty());

  // deep broken phase: tunneling-split quasi-degenerate pairs
  ModelParams broken{30.0, 3.2, 0.2, 4.0};
  const SpectrumResult s2 = diagonalize(restricted_superoperator(broken, 31));
  CHECK(detect_pairs(s2, 1e-3).entries.size() >= 4);
}

TEST_CASE("gap scan") {
  ModelParams base{20.0, 0.5, 0.0, 4.0};
  const std::vector<double> grid{0.4, 0.8};
  const auto rows = gap_scan(base, grid, 11);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(std::abs(row.lambda_p1.real()) < 1e-10);  // unitary: no decay
    CHECK(std::abs(row.lambda_m0.real()) < 1e-10);
    CHECK(row.lambda_m0.imag() >= 0.0);
  }

  ModelParams diss{20.0, 0.5, 0.01, 4.0};
  const auto drows = gap_scan(diss, {0.3}, 11);
  CHECK(drows[0].lambda_p1.real() < -1e-4);
  CHECK(drows[0].lambda_m0.real() < -1e-4);

  CHECK_THROWS_AS(gap_scan(base, {}, 11), invalid_parameter_error);
}

TEST_CASE("S_x basis diagonal") {
  const double S = 5.0;
  const int d = spin_dimension(S);

  // projector onto an S_x eigenstate: a single unit weight
  VectorXd diag = VectorXd::Zero(d), off(d - 1);
  for (int k = 1; k < d; ++k) {
    const double m = S - k;
    off[k - 1] = 0.5 * std::sqrt(S * (S + 1.0) - m * (m + 1.0));
  }
  const SpinOperators ops = spin_operators(S);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(ops.sx);
  const VectorXcd state = es.eigenvectors().col(2);
  const auto hist = sx_basis_diagonal(state * state.adjoint(), S);
  double total = 0.0;
  int big = 0;
  for (const auto& [sx, w] : hist) {
    total += w;
    if (w > 0.5) ++big;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(big == 1);

  // eigenvalues come out sorted and match the m-ladder
  for (int k = 0; k < d; ++k)
    CHECK(hist[k].first == doctest::Approx(-S + k).epsilon(1e-10));

  // maximally mixed state: uniform weights
  const MatrixXcd mixed = MatrixXcd::Identity(d, d) / double(d);
  for (const auto& [sx, w] : sx_basis_diagonal(mixed, S))
    CHECK(w == doctest::Approx(1.0 / d).epsilon(1e-12));
}

TEST_CASE("symmetry-broken combination") {
  ModelParams p{20.0, 2.6, 0.2, 4.0};
  const int K = 21;
  const RestrictedSuperoperator rsup = restricted_superoperator(p, K);
  const SpectrumResult spec = diagonalize(rsup);
  const RestrictedBasis basis = restricted_basis(p, K);

  const MatrixXcd rho_plus = basis.lift(stationary_state(spec));

  // leading odd-sector eigenoperator
  int idx = -1;
  for (int k = 0; k < spec.eigenvalues.size(); ++k)
    if (spec.sectors[k] == -1) {
      idx = k;
      break;
    }
  REQUIRE(idx >= 0);
  MatrixXcd rho_minus = basis.lift(unvec(spec.eigenvectors.col(idx), K));
  rho_minus = orient_positive_sx(rho_minus, p.S);

  // trivial edge: vanishing odd part returns rho_plus
  CHECK((symmetry_broken_combination(rho_plus, MatrixXcd::Zero(rho_plus.rows(),
                                                               rho_plus.cols())) -
         rho_plus)
            .norm() == 0.0);

  const MatrixXcd combined = symmetry_broken_combination(rho_plus, rho_minus);
  CHECK(std::abs(combined.trace().real() - 1.0) < 1e-10);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(combined, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(es.eigenvalues().minCoeff() < 1e-8);

  // the stationary state is two-peaked and parity-symmetric (the sx = 0 bin
  // belongs to neither side), the combination localizes at positive m_x
  const auto hist_plus = sx_basis_diagonal(rho_plus, p.S);
  const auto hist_comb = sx_basis_diagonal(combined, p.S);
  double w_neg_plus = 0, w_pos_plus = 0, w_neg_comb = 0, w_pos_comb = 0;
  for (size_t k = 0; k < hist_plus.size(); ++k) {
    if (hist_plus[k].first > 0.5) {
      w_pos_plus += hist_plus[k].second;
      w_pos_comb += hist_comb[k].second;
    } else if (hist_plus[k].first < -0.5) {
      w_neg_plus += hist_plus[k].second;
      w_neg_comb += hist_comb[k].second;
    }
  }
  CHECK(w_neg_plus == doctest::Approx(w_pos_plus).epsilon(1e-9));
  CHECK(w_pos_comb > 0.88);
  CHECK(w_neg_comb < 0.12);
}

TEST_CASE("restricted spectra converge in the basis size") {
  ModelParams p{100.0, 0.5, 0.2, 0.7};
  const SpectrumResult small = diagonalize(restricted_superoperator(p, 21));
  const SpectrumResult large = diagonalize(restricted_superoperator(p, 42));
  for (int k = 0; k < 10; ++k) {
    double best = 1e18;
    for (int j = 0; j < large.eigenvalues.size(); ++j)
      best = std::min(best, std::abs(small.eigenvalues[k] - large.eigenvalues[j]));
    CHECK(best < 1e-4);
  }
}
