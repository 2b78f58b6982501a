#pragma once

#include <utility>
#include <vector>

#include "lmg/lmg_model.hpp"
#include "lmg/types.hpp"

namespace lmg {

// Eigendecomposition of a superoperator with parity-sector labels.
// Eigenvalues are sorted by descending real part, ties by ascending |Im|.
// Conjugate partners with negative imaginary part are kept; dropping them is
// a reporting-layer convention (see reporting_indices).
struct SpectrumResult {
  VectorXcd eigenvalues;
  MatrixXcd eigenvectors;                  // columns, vec components over `pairs`
  VectorXi sectors;                        // +1 (K+) or -1 (K-)
  std::vector<std::pair<int, int>> pairs;  // meaning of each vec component
  int space_dim = 0;                       // Hilbert dimension of the operator basis
};

enum class DiagonalizeMethod {
  automatic,      // dense_complex below 2000, sector_real above
  dense_complex,  // zgeev on the full superoperator, Rayleigh sector labels
  sector_real,    // split by parity, Hermitian-operator basis, dgeev per block
};

SpectrumResult diagonalize(const MatrixXcd& superop, const VectorXcd& parity_diag,
                           std::vector<std::pair<int, int>> pairs = {},
                           DiagonalizeMethod method = DiagonalizeMethod::automatic);
SpectrumResult diagonalize(const MatrixXcd& superop, const MatrixXcd& parity,
                           DiagonalizeMethod method = DiagonalizeMethod::automatic);
SpectrumResult diagonalize(const RestrictedSuperoperator& rsup,
                           DiagonalizeMethod method = DiagonalizeMethod::automatic);

// Indices of eigenvalues kept for reporting: the Im >= 0 representative of
// every conjugate pair (negative-Im partners are skipped).
std::vector<int> reporting_indices(const SpectrumResult& result, double tol = 1e-12);

// Kernel eigenvector reshaped, trace-normalized and Hermitized.  Requires a
// unique eigenvalue within `zero_tol` of 0 in the even sector.
MatrixXcd stationary_state(const SpectrumResult& result, double zero_tol = 1e-8);

// Near-degenerate K+/K- eigenvalue pairs among the leading eigenvalues of
// each sector (greedy nearest match, each eigenvalue used at most once).
struct PairReport {
  struct Entry {
    int plus_index, minus_index;
    double gap;
  };
  std::vector<Entry> entries;
};

PairReport detect_pairs(const SpectrumResult& result, double tol, int leading = 12);

// Per-coupling summary of the slow part of the spectrum:
// lambda_p1 is the K+ eigenvalue with the largest non-zero real part,
// lambda_m0 the K- eigenvalue with the largest real part (Im >= 0 branch).
struct GapScanRow {
  double Lambda;
  Complex lambda_p1;
  Complex lambda_m0;
};

std::vector<GapScanRow> gap_scan(const ModelParams& base,
                                 const std::vector<double>& lambdas, int K,
                                 std::optional<double> band_quanta = {});

// Diagonal of rho in the S_x eigenbasis: (s_x eigenvalue, weight), sorted by
// ascending eigenvalue.
std::vector<std::pair<double, double>> sx_basis_diagonal(const MatrixXcd& rho,
                                                         double S);

// Flips the sign of a Hermitian traceless operator so its S_x-basis diagonal
// puts more weight on positive eigenvalues.
MatrixXcd orient_positive_sx(const MatrixXcd& op, double S);

// rho_plus + c * rho_minus with the largest admissible c > 0 (minimum
// eigenvalue driven to zero within tolerance).  rho_minus must be traceless;
// it is Hermitized and scale-normalized internally, so only its sign matters.
MatrixXcd symmetry_broken_combination(const MatrixXcd& rho_plus,
                                      const MatrixXcd& rho_minus);

}  // namespace lmg
