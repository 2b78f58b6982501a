#include "lmg/bosonic_lindblad.hpp"

#include <cmath>

#include "lmg/eig.hpp"
#include "lmg/lmg_model.hpp"
#include "lmg/hp_analytic.hpp"

namespace lmg {

BandedMatrix boson_annihilation(int n_max) {
  if (n_max < 1) throw invalid_parameter_error("n_max must be >= 1");
  BandedMatrix b(n_max + 1);
  VectorXcd& diag = b.diagonal(+1);
  for (int n = 1; n <= n_max; ++n) diag[n - 1] = std::sqrt(double(n));
  return b;
}

BosonicModel bosonic_model(double Lambda, double gamma, double T, int n_max) {
  if (n_max < 8) throw invalid_parameter_error("bosonic cutoff must be >= 8");
  if (!(gamma >= 0.0)) throw invalid_parameter_error("gamma must be >= 0");
  const HpParams hp = hp_params(Lambda, T);

  BosonicModel m;
  m.n_max = n_max;
  m.omega_b = hp.omega_b;
  const BandedMatrix b = boson_annihilation(n_max);
  const BandedMatrix bdag = b.adjoint();

  BandedMatrix h = bdag * b;
  h *= Complex(hp.omega_b);
  BandedMatrix pair = bdag * bdag;
  BandedMatrix pair_lower = b * b;
  pair *= Complex(0.0, 0.25 * hp.mz * gamma);
  pair_lower *= Complex(0.0, -0.25 * hp.mz * gamma);
  h += pair;
  h += pair_lower;
  h.prune(0.0);
  m.h = h;

  BandedMatrix jump = bdag;
  jump *= Complex(hp.b_plus);
  BandedMatrix down = b;
  down *= Complex(hp.b_minus);
  jump += down;
  jump *= Complex(std::sqrt(gamma));
  m.jump = jump;
  m.jump_adj = jump.adjoint();
  m.ldl = m.jump_adj * m.jump;
  return m;
}

namespace {

// b1 = b (x) 1 and b2 = 1 (x) b on the vectorized two-mode space with flat
// index i*(n_max+1) + j.
BandedMatrix mode_one(const BandedMatrix& b, int n_max) {
  const int d = n_max + 1;
  BandedMatrix out(d * d);
  const VectorXcd& src = *b.find_diagonal(+1);
  VectorXcd& diag = out.diagonal(+d);
  for (int i = 1; i <= n_max; ++i)
    for (int j = 0; j < d; ++j) diag[(i - 1) * d + j] = src[i - 1];
  return out;
}

BandedMatrix mode_two(const BandedMatrix& b, int n_max) {
  const int d = n_max + 1;
  BandedMatrix out(d * d);
  const VectorXcd& src = *b.find_diagonal(+1);
  VectorXcd& diag = out.diagonal(+1);
  for (int i = 0; i < d; ++i)
    for (int j = 1; j <= n_max; ++j) diag[i * d + j - 1] = src[j - 1];
  return out;
}

}  // namespace

MatrixXcd bosonic_superoperator(double Lambda, double gamma, double T, int n_max) {
  if (n_max < 8) throw invalid_parameter_error("bosonic cutoff must be >= 8");
  if (!(gamma >= 0.0)) throw invalid_parameter_error("gamma must be >= 0");
  const HpParams hp = hp_params(Lambda, T);

  const BandedMatrix b = boson_annihilation(n_max);
  const BandedMatrix b1 = mode_one(b, n_max);
  const BandedMatrix b2 = mode_two(b, n_max);
  const BandedMatrix b1d = b1.adjoint();
  const BandedMatrix b2d = b2.adjoint();

  // U = i w (b2^dag b2 - b1^dag b1) + (m gamma/4)(b1^dag b1^dag + b2^dag b2^dag - h.c.)
  BandedMatrix sup = b2d * b2;
  {
    BandedMatrix n1 = b1d * b1;
    n1 *= Complex(-1.0);
    sup += n1;
    sup *= Complex(0.0, hp.omega_b);
  }
  const double pairing = 0.25 * hp.mz * gamma;
  for (auto* factor : {&b1d, &b2d}) {
    BandedMatrix creation = (*factor) * (*factor);
    creation *= Complex(pairing);
    sup += creation;
  }
  for (auto* factor : {&b1, &b2}) {
    BandedMatrix annihilation = (*factor) * (*factor);
    annihilation *= Complex(-pairing);
    sup += annihilation;
  }

  // D = L1 L2 - (L1^dag L1 + L2^dag L2)/2, L_i = sqrt(gamma)(B+ b_i^dag + B- b_i)
  auto jump_of = [&](const BandedMatrix& mode, const BandedMatrix& mode_dag) {
    BandedMatrix l = mode_dag;
    l *= Complex(hp.b_plus);
    BandedMatrix lower = mode;
    lower *= Complex(hp.b_minus);
    l += lower;
    l *= Complex(std::sqrt(gamma));
    return l;
  };
  const BandedMatrix l1 = jump_of(b1, b1d);
  const BandedMatrix l2 = jump_of(b2, b2d);
  sup += l1 * l2;
  for (const BandedMatrix& l : {l1, l2}) {
    BandedMatrix norm_part = l.adjoint() * l;
    norm_part *= Complex(-0.5);
    sup += norm_part;
  }
  sup.prune(0.0);
  return sup.dense();
}

VectorXcd bosonic_parity_diagonal(int n_max) {
  const int d = n_max + 1;
  VectorXcd diag(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) diag[i * d + j] = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  return diag;
}

OracleStationary oracle_stationary(double Lambda, double gamma, double T, int n_max) {
  if (!(gamma > 0.0))
    throw invalid_parameter_error("stationary state needs gamma > 0");
  const MatrixXcd sup = bosonic_superoperator(Lambda, gamma, T, n_max);
  const int d = n_max + 1;
  const int n = d * d;

  // The kernel is even under the boson parity (-1)^(n1+n2), and the
  // superoperator never couples the sectors, so the solve can stay in the
  // even block.
  std::vector<int> even;
  even.reserve((n + 1) / 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if ((i + j) % 2 == 0) even.push_back(i * d + j);
  const int ne = static_cast<int>(even.size());
  MatrixXcd block(ne, ne);
  for (int c = 0; c < ne; ++c)
    for (int r = 0; r < ne; ++r) block(r, c) = sup(even[r], even[c]);

  auto solve_with_row = [&](int row) {
    MatrixXcd a = block;
    VectorXcd rhs = VectorXcd::Zero(ne);
    a.row(row).setZero();
    for (int r = 0; r < ne; ++r) {
      const int i = even[r] / d, j = even[r] % d;
      if (i == j) a(row, r) = 1.0;  // trace row
    }
    rhs[row] = 1.0;
    return solve_linear(std::move(a), std::move(rhs));
  };

  VectorXcd xe = solve_with_row(0);
  double residual = (block * xe).cwiseAbs().maxCoeff();
  const double sup_scale = sup.cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8 * std::max(1.0, sup_scale))) {
    xe = solve_with_row(ne / 2);
    residual = (block * xe).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-8 * std::max(1.0, sup_scale)))
      throw solver_error("no stationary kernel within tolerance");
  }
  VectorXcd x = VectorXcd::Zero(n);
  for (int r = 0; r < ne; ++r) x[even[r]] = xe[r];

  OracleStationary out;
  out.rho.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.rho(i, j) = x[i * d + j];
  out.rho /= out.rho.trace();
  out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
  out.residual = residual;

  const BandedMatrix b = boson_annihilation(n_max);
  const BandedMatrix num = b.adjoint() * b;
  const BandedMatrix bb = b * b;
  out.occupation = num.trace_product(out.rho).real();
  out.pair_moment = bb.trace_product(out.rho);
  return out;
}

BosonTrajectory oracle_evolution(double Lambda, double gamma, double T,
                                 double theta, double S,
                                 const std::vector<double>& t_grid, int n_max) {
  const HpParams hp = hp_params(Lambda, T);
  if (hp.Lambda >= 1.0)
    throw unsupported_regime_error("oracle evolution assumes the symmetric phase");
  const BosonicModel m = bosonic_model(Lambda, gamma, T, n_max);
  const int d = n_max + 1;

  const double theta_prime = theta * std::sqrt(0.5 * S) * std::exp(-0.5 * hp.phi_b);
  if (theta_prime * theta_prime + 6.0 * std::sqrt(theta_prime * theta_prime + 1.0) >
      n_max)
    throw cutoff_error("coherent amplitude too large for the Fock cutoff");

  // coherent state |theta'>: psi_n = e^{-theta'^2/2} theta'^n / sqrt(n!)
  VectorXcd psi(d);
  psi[0] = std::exp(-0.5 * theta_prime * theta_prime);
  for (int n = 1; n < d; ++n) psi[n] = psi[n - 1] * theta_prime / std::sqrt(double(n));
  MatrixXcd rho = psi * psi.adjoint();
  rho /= rho.trace();

  const BandedMatrix b = boson_annihilation(n_max);
  const BandedMatrix num = b.adjoint() * b;

  BosonTrajectory traj;
  const size_t n_rec = t_grid.size();
  traj.times.resize(n_rec);
  traj.mode_mean.resize(n_rec);
  traj.occupation.resize(n_rec);
  traj.effective_temperature.resize(n_rec);

  BandedModel ops;
  ops.dim = d;
  ops.h = m.h;
  ops.jump = m.jump;
  ops.jump_adj = m.jump_adj;
  ops.ldl = m.ldl;
  auto rhs = [&](const MatrixXcd& y, MatrixXcd& dydt) {
    lindblad_action(ops, y, dydt);
  };
  auto hermitize = [](MatrixXcd& y) { y = 0.5 * (y + y.adjoint()).eval(); };
  auto record = [&](size_t g, double t, const MatrixXcd& y) {
    traj.times[g] = t;
    traj.mode_mean[g] = b.trace_product(y);
    traj.occupation[g] = num.trace_product(y).real();
    const double p0 = y(0, 0).real(), p1 = y(1, 1).real();
    traj.effective_temperature[g] =
        (p1 > 1e-300 && p0 > p1) ? m.omega_b / std::log(p0 / p1) : 0.0;
    if (std::abs(y.trace().real() - 1.0) > 1e-8)
      throw solver_error("oracle evolution: trace drift beyond tolerance");
  };
  traj.stats = integrate_dopri5(rho, t_grid, rhs, hermitize, record);
  return traj;
}

}  // namespace lmg
