#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hilt {

/// Step control shared by the single-class and multiclass integrators.
struct IntegratorOptions {
  double step = 1e-3;
  /// Declare the cascade over once every infectious fraction drops below this.
  /// Zero disables early stopping.
  double d_stop = 1e-10;
  double eps_haz = 1e-12;
  /// Tolerated excursion outside the simplex before the step is rejected.
  double simplex_tol = 1e-9;
  /// Step doubling with local error control instead of a fixed step.
  bool adaptive = false;
  double adaptive_tol = 1e-10;
  double min_step = 1e-8;
  double max_step = 0.1;
  /// Keep every k-th accepted step (the first and last are always kept).
  std::size_t record_stride = 1;
};

namespace detail {

/// One classical 4th-order Runge-Kutta step of y' = f(y) (autonomous).
template <class Rhs>
std::vector<double> rk4_step(const Rhs& f, const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> tmp(n);
  const std::vector<double> k1 = f(y);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  const std::vector<double> k2 = f(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  const std::vector<double> k3 = f(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  const std::vector<double> k4 = f(tmp);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

/// Drives rk4_step from t = 0 to t_end, calling `accept(t, y)` after every
/// accepted step; `accept` returns false to stop early. Returns the final time.
template <class Rhs, class Accept>
double rk4_drive(const Rhs& f, std::vector<double> y, double t_end, const IntegratorOptions& opts, Accept accept) {
  double t = 0.0;
  std::size_t steps = 0;
  double h = opts.adaptive ? std::min(opts.step, opts.max_step) : opts.step;
  while (t < t_end) {
    // Land exactly on t_end; absorb a sliver shorter than 1e-9 of a step.
    const bool last = t + h * (1.0 + 1e-9) >= t_end;
    const double h_try = last ? t_end - t : h;
    std::vector<double> next;
    if (!opts.adaptive) {
      next = rk4_step(f, y, h_try);
    } else {
      const std::vector<double> full = rk4_step(f, y, h_try);
      const std::vector<double> half = rk4_step(f, rk4_step(f, y, 0.5 * h_try), 0.5 * h_try);
      double err = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) err = std::max(err, std::abs(full[i] - half[i]) / 15.0);
      const double factor = err > 0.0 ? 0.9 * std::pow(opts.adaptive_tol / err, 0.2) : 2.0;
      if (err > opts.adaptive_tol && h_try > opts.min_step) {
        h = std::max(opts.min_step, h_try * std::max(0.2, factor));
        continue;
      }
      next = half;
      h = std::clamp(h_try * std::min(2.0, factor), opts.min_step, opts.max_step);
    }
    ++steps;
    // Fixed steps use k * h so long runs keep an exact grid.
    t = last ? t_end : (opts.adaptive ? t + h_try : static_cast<double>(steps) * h);
    y = std::move(next);
    if (!accept(t, y)) break;
  }
  return t;
}

}  // namespace detail
}  // namespace hilt
