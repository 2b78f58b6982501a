#include "lmg/lmg_model.hpp"

#include <algorithm>
#include <cmath>

#include "lmg/eig.hpp"
#include "lmg/hp_analytic.hpp"
#include "lmg/vec.hpp"

namespace lmg {

namespace {

BandedMatrix banded_hs(const SpinBands& b, const ModelParams& p) {
  BandedMatrix hs = b.sx * b.sx;
  hs *= Complex(-0.5 * p.Lambda / p.S);
  BandedMatrix z = b.sz;
  z *= Complex(-1.0);
  hs += z;
  hs.prune(0.0);
  return hs;
}

BandedMatrix banded_hgamma(const SpinBands& b, const ModelParams& p) {
  BandedMatrix xy = b.sx * b.sy;
  BandedMatrix yx = b.sy * b.sx;
  xy += yx;
  xy *= Complex(0.25 * p.gamma / p.S);
  xy.prune(1e-300);
  return xy;
}

BandedMatrix banded_jump(const SpinBands& b, const ModelParams& p) {
  BandedMatrix l = b.sx;
  BandedMatrix y = b.sy;
  y *= Complex(0.0, 0.25 / p.T);
  l += y;
  l *= std::sqrt(2.0 * p.gamma * p.T / p.S);
  return l;
}

}  // namespace

MatrixXcd hamiltonian_system(const ModelParams& p) {
  p.validate();
  return banded_hs(spin_bands(p.S), p).dense();
}

MatrixXcd hamiltonian_gamma(const ModelParams& p) {
  p.validate();
  return banded_hgamma(spin_bands(p.S), p).dense();
}

MatrixXcd jump_operator(const ModelParams& p) {
  p.validate();
  return banded_jump(spin_bands(p.S), p).dense();
}

ModelOperators build_operators(const ModelParams& p) {
  p.validate();
  const SpinBands b = spin_bands(p.S);
  ModelOperators ops;
  ops.hs = banded_hs(b, p).dense();
  ops.hgamma = banded_hgamma(b, p).dense();
  ops.jump = banded_jump(b, p).dense();
  ops.ldl = ops.jump.adjoint() * ops.jump;
  ops.h = ops.hs + ops.hgamma;
  return ops;
}

BandedModel banded_model(const ModelParams& p) {
  p.validate();
  const SpinBands b = spin_bands(p.S);
  BandedModel m;
  m.dim = p.dim();
  m.hs = banded_hs(b, p);
  m.h = m.hs;
  m.h += banded_hgamma(b, p);
  m.jump = banded_jump(b, p);
  m.jump_adj = m.jump.adjoint();
  m.ldl = m.jump_adj * m.jump;
  m.sx = b.sx;
  m.sy = b.sy;
  m.sz = b.sz;
  return m;
}

MatrixXcd lindblad_action(const ModelOperators& ops, const MatrixXcd& rho) {
  if (rho.rows() != ops.h.rows() || rho.cols() != ops.h.cols())
    throw invalid_parameter_error("lindblad_action: dimension mismatch");
  const Complex i(0.0, 1.0);
  MatrixXcd out = i * (rho * ops.h - ops.h * rho);
  out.noalias() += ops.jump * rho * ops.jump.adjoint();
  out.noalias() -= 0.5 * (ops.ldl * rho + rho * ops.ldl);
  return out;
}

MatrixXcd lindblad_action(const ModelParams& p, const MatrixXcd& rho) {
  return lindblad_action(build_operators(p), rho);
}

void lindblad_action(const BandedModel& ops, const MatrixXcd& rho, MatrixXcd& out) {
  const int d = ops.dim;
  out.resize(d, d);
  const Complex iu(0.0, 1.0);
#pragma omp parallel
  {
    VectorXcd tmp(d);
#pragma omp for schedule(static)
    for (int j = 0; j < d; ++j) {
      auto out_j = out.col(j);
      out_j.setZero();
      // i (rho H).col(j): (rho H)(:,j) = sum_o H_o[j-o] rho(:,j-o)
      for (const auto& [o, diag] : ops.h.diagonals()) {
        const int src = j - o;
        if (src < 0 || src >= d) continue;
        out_j += (iu * diag[std::min(src, j)]) * rho.col(src);
      }
      // -i (H rho).col(j): banded-left on the column
      for (const auto& [o, diag] : ops.h.diagonals()) {
        const int len = static_cast<int>(diag.size());
        const int r0 = o >= 0 ? 0 : -o;
        out_j.segment(r0, len).array() -=
            iu * diag.array() * rho.col(j).segment(r0 + o, len).array();
      }
      // L rho L^dag: first tmp = (rho L^dag).col(j), then banded-left by L
      tmp.setZero();
      for (const auto& [o, diag] : ops.jump_adj.diagonals()) {
        const int src = j - o;
        if (src < 0 || src >= d) continue;
        tmp += diag[std::min(src, j)] * rho.col(src);
      }
      for (const auto& [o, diag] : ops.jump.diagonals()) {
        const int len = static_cast<int>(diag.size());
        const int r0 = o >= 0 ? 0 : -o;
        out_j.segment(r0, len).array() +=
            diag.array() * tmp.segment(r0 + o, len).array();
      }
      // -(L^dag L rho + rho L^dag L)/2
      for (const auto& [o, diag] : ops.ldl.diagonals()) {
        const int len = static_cast<int>(diag.size());
        const int r0 = o >= 0 ? 0 : -o;
        out_j.segment(r0, len).array() -=
            0.5 * diag.array() * rho.col(j).segment(r0 + o, len).array();
        const int src = j - o;
        if (src < 0 || src >= d) continue;
        out_j -= (0.5 * diag[std::min(src, j)]) * rho.col(src);
      }
    }
  }
}

MatrixXcd lindblad_superoperator(const ModelParams& p, int max_dim2) {
  p.validate();
  const int d = p.dim();
  if (static_cast<long>(d) * d > max_dim2)
    throw dimension_budget_error(
        "lindblad_superoperator: d^2 = " + std::to_string(static_cast<long>(d) * d) +
        " exceeds the budget " + std::to_string(max_dim2) +
        "; use restricted_superoperator");
  const ModelOperators ops = build_operators(p);
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  const Complex i(0.0, 1.0);
  MatrixXcd sup = i * (kron(id, ops.h.transpose()) - kron(ops.h, id));
  sup += kron(ops.jump, ops.jump.conjugate());
  sup -= 0.5 * (kron(ops.ldl, id) + kron(id, ops.ldl.transpose()));
  return sup;
}

VectorXcd parity_superoperator_diagonal(double S) {
  const VectorXcd p = parity_diagonal(S);
  const int d = static_cast<int>(p.size());
  VectorXcd diag(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      diag[static_cast<Eigen::Index>(i) * d + j] = std::conj(p[i]) * p[j];
  return diag;
}

MatrixXcd parity_superoperator(double S) {
  return parity_superoperator_diagonal(S).asDiagonal();
}

MatrixXcd RestrictedBasis::lift(const MatrixXcd& a) const {
  if (a.rows() != vectors.cols() || a.cols() != vectors.cols())
    throw invalid_parameter_error("lift: dimension mismatch");
  return vectors.cast<Complex>() * a * vectors.transpose().cast<Complex>();
}

RestrictedBasis restricted_basis(const ModelParams& p, int K) {
  p.validate();
  const int d = p.dim();
  if (K < 1 || K > d) throw invalid_parameter_error("restricted_basis: need 1 <= K <= d");

  // H_S couples S_z indices two apart, so the even and odd index ladders are
  // exact parity blocks and each block is tridiagonal in its own coordinates.
  const SpinBands bands = spin_bands(p.S);
  const BandedMatrix hs = banded_hs(bands, p);
  const VectorXcd* d0 = hs.find_diagonal(0);
  const VectorXcd* d2 = hs.find_diagonal(2);

  RestrictedBasis basis;
  basis.S = p.S;
  basis.hilbert_dim = d;
  basis.energies.resize(K);
  basis.vectors = MatrixXd::Zero(d, K);
  basis.parity.resize(K);
  basis.parity_phase.resize(K);

  struct BlockEig {
    VectorXd values;
    MatrixXd vectors;
    int taken = 0;
  };
  BlockEig blocks[2];
  const VectorXcd parity_vals = parity_diagonal(p.S);

  for (int b = 0; b < 2; ++b) {
    const int nb = (d - b + 1) / 2;
    if (nb == 0) continue;
    VectorXd diag = VectorXd::Zero(nb);
    VectorXd off = VectorXd::Zero(std::max(nb - 1, 0));
    for (int t = 0; t < nb; ++t) {
      const int k = b + 2 * t;
      if (d0) diag[t] = (*d0)[k].real();
      if (t + 1 < nb && d2) off[t] = (*d2)[k].real();
    }
    const int want = std::min(K, nb);
    tridiag_lowest(diag, off, want, blocks[b].values, blocks[b].vectors);
  }

  // Merge ascending; on quasi-degenerate ties prefer the block whose parity
  // eigenvalue is closest to +1 (the even combination survives as the ground
  // state in the broken phase).
  auto block_phase = [&](int b) { return parity_vals[b]; };
  const double scale = std::max(std::abs(blocks[0].values.size() ? blocks[0].values[0] : 0.0), 1.0);
  for (int k = 0; k < K; ++k) {
    int pick = -1;
    for (int b = 0; b < 2; ++b) {
      if (blocks[b].taken >= blocks[b].values.size()) continue;
      if (pick < 0) {
        pick = b;
        continue;
      }
      const double ea = blocks[pick].values[blocks[pick].taken];
      const double eb = blocks[b].values[blocks[b].taken];
      if (std::abs(ea - eb) <= 1e-11 * scale) {
        if (block_phase(b).real() > block_phase(pick).real()) pick = b;
      } else if (eb < ea) {
        pick = b;
      }
    }
    BlockEig& blk = blocks[pick];
    const int t = blk.taken++;
    basis.energies[k] = blk.values[t];
    const int nb = static_cast<int>(blk.vectors.rows());
    for (int r = 0; r < nb; ++r) basis.vectors(pick + 2 * r, k) = blk.vectors(r, t);
    // fix the eigenvector sign so results are reproducible
    int imax = 0;
    basis.vectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (basis.vectors(imax, k) < 0.0) basis.vectors.col(k) = -basis.vectors.col(k);
    basis.parity_phase[k] = block_phase(pick);
    basis.parity[k] = pick == 0 ? 1 : -1;
  }
  return basis;
}

RestrictedSuperoperator restricted_superoperator(const ModelParams& p, int K,
                                                 std::optional<double> band_quanta) {
  RestrictedSuperoperator out;
  out.basis = restricted_basis(p, K);

  const SpinBands bands = spin_bands(p.S);
  const MatrixXcd v = out.basis.vectors.cast<Complex>();
  MatrixXcd tmp;
  banded_hgamma(bands, p).apply_left(v, tmp);
  MatrixXcd h = v.adjoint() * tmp;
  h += out.basis.energies.cast<Complex>().asDiagonal();
  banded_jump(bands, p).apply_left(v, tmp);
  const MatrixXcd jump = v.adjoint() * tmp;
  const MatrixXcd ldl = jump.adjoint() * jump;
  out.h = h;
  out.jump = jump;

  // retained matrix units
  if (band_quanta) {
    double scale;
    try {
      scale = hp_params(p.Lambda, p.T).omega_b;
    } catch (const critical_point_error&) {
      scale = K > 1 ? (out.basis.energies[K - 1] - out.basis.energies[0]) / (K - 1) : 1.0;
    }
    const double window = *band_quanta * scale;
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (std::abs(out.basis.energies[i] - out.basis.energies[j]) <= window)
          out.pairs.emplace_back(i, j);
  } else {
    out.pairs.reserve(static_cast<size_t>(K) * K);
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) out.pairs.emplace_back(i, j);
  }

  const int n = static_cast<int>(out.pairs.size());
  if (static_cast<long>(n) * n > (1L << 28))
    throw dimension_budget_error("restricted_superoperator: retained basis too large");

  out.parity.resize(n);
  for (int r = 0; r < n; ++r) {
    const auto [i, j] = out.pairs[r];
    out.parity[r] = std::conj(out.basis.parity_phase[i]) * out.basis.parity_phase[j];
  }

  // L(|k><l|)_{ij} = i (delta_ik H_lj - H_ik delta_jl)
  //                + L_ik conj(L_jl) - (M_ik delta_jl + delta_ik M_lj)/2
  out.matrix.resize(n, n);
  const Complex iu(0.0, 1.0);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n; ++c) {
    const auto [k, l] = out.pairs[c];
    for (int r = 0; r < n; ++r) {
      const auto [i, j] = out.pairs[r];
      Complex val = jump(i, k) * std::conj(jump(j, l));
      if (i == k) val += iu * h(l, j) - 0.5 * ldl(l, j);
      if (j == l) val += -iu * h(i, k) - 0.5 * ldl(i, k);
      out.matrix(r, c) = val;
    }
  }
  return out;
}

}  // namespace lmg
