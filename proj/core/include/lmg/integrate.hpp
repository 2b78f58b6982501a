#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "lmg/types.hpp"

namespace lmg {

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 1e-4;
  double max_step = 0.0;  // 0 = unlimited
  long max_steps = 200000000L;
};

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
};

// Embedded Dormand-Prince 5(4) on a matrix-valued ODE y' = f(y), integrating
// from grid.front() and invoking `record(index, t, y)` at every grid point.
// `post_step(y)` runs after each accepted step (used to re-Hermitize density
// matrices).  The error norm is the usual mixed absolute/relative RMS norm.
template <typename Rhs, typename PostStep, typename Record>
IntegratorStats integrate_dopri5(MatrixXcd& y, const std::vector<double>& grid,
                                 Rhs&& rhs, PostStep&& post_step, Record&& record,
                                 const IntegratorOptions& opt = {}) {
  if (grid.size() < 1) throw invalid_parameter_error("integrate: empty time grid");
  for (size_t g = 1; g < grid.size(); ++g)
    if (!(grid[g] > grid[g - 1]))
      throw invalid_parameter_error("integrate: time grid must increase strictly");

  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // difference between the 5th- and embedded 4th-order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto rows = y.rows(), cols = y.cols();
  MatrixXcd k1(rows, cols), k2(rows, cols), k3(rows, cols), k4(rows, cols),
      k5(rows, cols), k6(rows, cols), k7(rows, cols), ytmp(rows, cols),
      ynew(rows, cols);

  IntegratorStats stats;
  double t = grid.front();
  double h = opt.initial_step;
  record(0, t, y);

  for (size_t g = 1; g < grid.size(); ++g) {
    const double t_target = grid[g];
    // absorb rounding leftovers so clipped steps cannot underflow spuriously
    while (t_target - t > 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max(1.0, std::abs(t_target))) {
      if (stats.accepted + stats.rejected > opt.max_steps)
        throw solver_error("integrate: step budget exhausted");
      const double h_before_clip = h;
      if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
      h = std::min(h, t_target - t);
      if (!(h > 256.0 * std::numeric_limits<double>::epsilon() *
                std::max(1.0, std::abs(t))))
        throw solver_error("integrate: step size underflow");

      rhs(y, k1);
      ytmp = y + h * (a21 * k1);
      rhs(ytmp, k2);
      ytmp = y + h * (a31 * k1 + a32 * k2);
      rhs(ytmp, k3);
      ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      rhs(ytmp, k4);
      ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      rhs(ytmp, k5);
      ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      rhs(ytmp, k6);
      ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs(ynew, k7);

      ytmp = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      // scaled RMS error norm
      const double count = double(rows * cols);
      const double scale = std::sqrt(
          std::max(y.squaredNorm(), ynew.squaredNorm()) / count);
      const double tol = opt.atol + opt.rtol * scale;
      const double err = std::sqrt(ytmp.squaredNorm() / count) / tol;

      const bool clipped_to_grid = h < h_before_clip;
      const double factor =
          std::clamp(err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0, 0.2, 5.0);
      if (err <= 1.0) {
        t += h;
        y.swap(ynew);
        post_step(y);
        ++stats.accepted;
        // a step shortened only to land on the grid says nothing about the
        // controller's natural step, so resume from the unclipped value
        h = clipped_to_grid ? h_before_clip : h * factor;
      } else {
        ++stats.rejected;
        h *= factor;
      }
    }
    t = t_target;
    record(g, t, y);
  }
  return stats;
}

}  // namespace lmg
