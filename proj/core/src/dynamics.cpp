#include "lmg/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "lmg/spin_algebra.hpp"

namespace lmg {

MatrixXcd initial_state(const ModelParams& p, const InitialStateSpec& spec) {
  p.validate();
  if (!std::isfinite(spec.theta))
    throw invalid_parameter_error("initial state angle must be finite");
  const int d = p.dim();
  VectorXcd psi;
  if (spec.kind == InitialStateKind::rotated_stretched) {
    psi = VectorXcd::Zero(d);
    psi[0] = 1.0;  // |S,S>, S_z eigenvalue +S
  } else {
    // parity-resolved ground state; in the broken phase the quasi-degenerate
    // doublet is split exactly by block and the P = +1 member is preferred
    psi = restricted_basis(p, 1).vectors.col(0).cast<Complex>();
  }
  if (spec.theta != 0.0) psi = rotation_y(p.S, spec.theta) * psi;
  return psi * psi.adjoint();
}

namespace {

struct ObservableSet {
  std::function<double(const MatrixXcd&)> sx, sy, sz, energy;
};

Trajectory run_trajectory(MatrixXcd y, const std::vector<double>& t_grid,
                          const std::function<void(const MatrixXcd&, MatrixXcd&)>& rhs,
                          const ObservableSet& obs, const EvolveOptions& opt) {
  const size_t n = t_grid.size();
  Trajectory traj;
  traj.times.resize(n);
  traj.sx.resize(n);
  traj.sy.resize(n);
  traj.sz.resize(n);
  traj.energy.resize(n);
  traj.trace_error.resize(n);
  traj.purity.resize(n);
  traj.has_min_eigenvalue = opt.track_min_eigenvalue;
  if (opt.track_min_eigenvalue) traj.min_eigenvalue.resize(n);

  auto hermitize = [](MatrixXcd& state) {
    state = 0.5 * (state + state.adjoint()).eval();
  };
  auto record = [&](size_t g, double t, const MatrixXcd& state) {
    traj.times[g] = t;
    traj.sx[g] = obs.sx(state);
    traj.sy[g] = obs.sy(state);
    traj.sz[g] = obs.sz(state);
    traj.energy[g] = obs.energy(state);
    traj.trace_error[g] = std::abs(state.trace().real() - 1.0);
    traj.purity[g] = state.squaredNorm();
    if (opt.track_min_eigenvalue) {
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(state, Eigen::EigenvaluesOnly);
      traj.min_eigenvalue[g] = es.eigenvalues().minCoeff();
    }
    if (traj.trace_error[g] > opt.trace_tol)
      throw solver_error("evolve: trace drift " + std::to_string(traj.trace_error[g]) +
                         " beyond tolerance");
  };

  IntegratorOptions iopt;
  iopt.rtol = opt.rtol;
  iopt.atol = opt.atol;
  traj.stats = integrate_dopri5(y, t_grid, rhs, hermitize, record, iopt);
  traj.final_state = std::move(y);
  return traj;
}

}  // namespace

Trajectory evolve(const ModelParams& p, const MatrixXcd& rho0,
                  const std::vector<double>& t_grid, const EvolveOptions& opt) {
  p.validate();
  const int d = p.dim();
  if (rho0.rows() != d || rho0.cols() != d)
    throw invalid_parameter_error("evolve: initial state dimension mismatch");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8 ||
      (rho0 - rho0.adjoint()).norm() > 1e-8 * std::max(1.0, rho0.norm()))
    throw invalid_parameter_error("evolve: initial state is not a density matrix");

  if (opt.restrict_levels > 0 && opt.restrict_levels < d) {
    const int K = opt.restrict_levels;
    const RestrictedBasis basis = restricted_basis(p, K);
    const MatrixXcd v = basis.vectors.cast<Complex>();
    const SpinOperators full = spin_operators(p.S);
    const MatrixXcd sx = v.adjoint() * full.sx * v;
    const MatrixXcd sy = v.adjoint() * full.sy * v;
    const MatrixXcd sz = v.adjoint() * full.sz * v;
    const MatrixXcd hs = basis.energies.cast<Complex>().asDiagonal();
    MatrixXcd h = v.adjoint() * hamiltonian_gamma(p) * v;
    h += hs;
    const MatrixXcd jump = v.adjoint() * jump_operator(p) * v;
    const MatrixXcd jump_adj = jump.adjoint();
    const MatrixXcd ldl = jump_adj * jump;

    MatrixXcd y = v.adjoint() * rho0 * v;
    const double leak = std::abs(1.0 - y.trace().real());
    if (leak > opt.restrict_tol)
      throw invalid_parameter_error(
          "evolve: initial state leaks " + std::to_string(leak) +
          " outside the restricted subspace");

    const Complex iu(0.0, 1.0);
    auto rhs = [&, h, jump, jump_adj, ldl](const MatrixXcd& state, MatrixXcd& dydt) {
      dydt.noalias() = iu * (state * h);
      dydt.noalias() -= iu * (h * state);
      dydt.noalias() += jump * state * jump_adj;
      dydt.noalias() -= 0.5 * (ldl * state);
      dydt.noalias() -= 0.5 * (state * ldl);
    };
    auto trace_with = [](const MatrixXcd& op) {
      return [op](const MatrixXcd& state) {
        return (op.transpose().array() * state.array()).sum().real();
      };
    };
    Trajectory traj = run_trajectory(std::move(y), t_grid, rhs,
                                     {trace_with(sx), trace_with(sy),
                                      trace_with(sz), trace_with(hs)},
                                     opt);
    traj.final_state = v * traj.final_state * v.adjoint();
    return traj;
  }

  const BandedModel ops = banded_model(p);
  auto rhs = [ops](const MatrixXcd& y, MatrixXcd& dydt) {
    lindblad_action(ops, y, dydt);
  };
  auto band_trace = [&ops](const BandedMatrix BandedModel::*member) {
    return [&ops, member](const MatrixXcd& state) {
      return (ops.*member).trace_product(state).real();
    };
  };
  return run_trajectory(rho0, t_grid, rhs,
                        {band_trace(&BandedModel::sx), band_trace(&BandedModel::sy),
                         band_trace(&BandedModel::sz), band_trace(&BandedModel::hs)},
                        opt);
}

namespace {

// Single-frequency discrete Fourier amplitude, used to seed the fit.
Complex dft_at(const VectorXd& t, const VectorXd& y, double omega) {
  Complex sum = 0.0;
  for (int k = 0; k < t.size(); ++k)
    sum += y[k] * std::exp(Complex(0.0, -omega * t[k]));
  return sum;
}

}  // namespace

DampedOscillationFit fit_damped_oscillation(const VectorXd& times,
                                            const VectorXd& values) {
  const int n = static_cast<int>(times.size());
  if (n != values.size()) throw invalid_parameter_error("fit: size mismatch");
  if (n < 40) throw invalid_parameter_error("fit: need at least 40 samples");
  const double span = times[n - 1] - times[0];
  if (!(span > 0.0)) throw invalid_parameter_error("fit: times must increase");

  DampedOscillationFit fit;
  const double ymax = values.cwiseAbs().maxCoeff();
  if (ymax < 1e-14) {
    fit.low_amplitude = true;
    return fit;
  }

  // frequency seed: discrete Fourier scan with parabolic refinement, capped
  // below the Nyquist frequency of the sampling to keep aliases out
  const VectorXd centered = values.array() - values.mean();
  const double dt_med = span / (n - 1);
  const double omega_nyquist = M_PI / dt_med;
  const double domega = 2.0 * M_PI / (4.0 * span);
  const int bins = std::min(4 * n, static_cast<int>(0.95 * omega_nyquist / domega));
  int best_bin = 1;
  double best_pow = -1.0;
  std::vector<double> powers(bins, 0.0);
  for (int b = 1; b < bins; ++b) {
    powers[b] = std::norm(dft_at(times, centered, b * domega));
    if (powers[b] > best_pow) {
      best_pow = powers[b];
      best_bin = b;
    }
  }
  double omega0 = best_bin * domega;
  if (best_bin > 1 && best_bin < bins - 1) {
    const double pm = powers[best_bin - 1], pc = powers[best_bin], pp = powers[best_bin + 1];
    const double denom = pm - 2.0 * pc + pp;
    if (std::abs(denom) > 0.0)
      omega0 += 0.5 * domega * (pm - pp) / denom;
  }
  if (span * omega0 < 3.0 * 2.0 * M_PI)
    throw invalid_parameter_error("fit: samples span fewer than 3 periods");

  // decay seed from the log envelope of local maxima of |y|
  double kappa0 = 0.0;
  {
    std::vector<double> pt, pv;
    for (int k = 1; k + 1 < n; ++k) {
      const double a = std::abs(centered[k]);
      if (a >= std::abs(centered[k - 1]) && a >= std::abs(centered[k + 1]) &&
          a > 1e-12 * ymax) {
        pt.push_back(times[k]);
        pv.push_back(std::log(a));
      }
    }
    if (pt.size() >= 2) {
      const int m = static_cast<int>(pt.size());
      double st = 0, sv = 0, stt = 0, stv = 0;
      for (int k = 0; k < m; ++k) {
        st += pt[k];
        sv += pv[k];
        stt += pt[k] * pt[k];
        stv += pt[k] * pv[k];
      }
      const double det = m * stt - st * st;
      if (std::abs(det) > 0.0) kappa0 = -(m * stv - st * sv) / det;
    }
  }
  const Complex f0 = dft_at(times, centered, omega0);
  double phase0 = std::arg(f0);
  double amp0 = 2.0 * std::abs(f0) / n;

  // Levenberg-Marquardt on (A, kappa, omega, phi)
  Eigen::Vector4d par(amp0, kappa0, omega0, phase0);
  double lambda = 1e-3;
  auto residuals = [&](const Eigen::Vector4d& q, VectorXd& r) {
    for (int k = 0; k < n; ++k)
      r[k] = q[0] * std::exp(-q[1] * times[k]) * std::cos(q[2] * times[k] + q[3]) -
             values[k];
  };
  VectorXd r(n), r_try(n);
  residuals(par, r);
  double cost = r.squaredNorm();
  Eigen::MatrixXd jac(n, 4);
  int it = 0;
  const int max_iter = 200;
  for (; it < max_iter; ++it) {
    for (int k = 0; k < n; ++k) {
      const double decay = std::exp(-par[1] * times[k]);
      const double arg = par[2] * times[k] + par[3];
      const double c = std::cos(arg), s = std::sin(arg);
      jac(k, 0) = decay * c;
      jac(k, 1) = -times[k] * par[0] * decay * c;
      jac(k, 2) = -times[k] * par[0] * decay * s;
      jac(k, 3) = -par[0] * decay * s;
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d jtr = jac.transpose() * r;
    Eigen::Matrix4d damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::Vector4d step = damped.ldlt().solve(-jtr);
    const Eigen::Vector4d trial = par + step;
    residuals(trial, r_try);
    const double cost_try = r_try.squaredNorm();
    if (cost_try < cost) {
      par = trial;
      r = r_try;
      const bool converged = step.norm() <= 1e-12 * (1.0 + par.norm()) ||
                             std::abs(cost - cost_try) <= 1e-15 * cost;
      cost = cost_try;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (converged) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  if (it == max_iter)
    throw solver_error("fit: no convergence; residual " +
                       std::to_string(std::sqrt(cost / n)));

  // canonical form: A >= 0, omega >= 0, phi in (-pi, pi]
  if (par[0] < 0.0) {
    par[0] = -par[0];
    par[3] += M_PI;
  }
  if (par[2] < 0.0) {
    par[2] = -par[2];
    par[3] = -par[3];
  }
  par[3] = std::remainder(par[3], 2.0 * M_PI);
  fit.amplitude = par[0];
  fit.decay = par[1];
  fit.frequency = par[2];
  fit.phase = par[3];
  fit.residual = std::sqrt(cost / n);
  fit.iterations = it + 1;
  fit.low_amplitude = par[0] < 1e-6 * ymax;
  return fit;
}

}  // namespace lmg
