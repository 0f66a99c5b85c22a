#pragma once

#include <cstddef>
#include <vector>

#include "hilt/rk4.hpp"
#include "hilt/threshold_dist.hpp"
#include "hilt/trajectory.hpp"

namespace hilt {

/// Point of the fluid limit: b exhausted-active, d infectious fraction.
struct FluidState {
  double t = 0.0;
  double b = 0.0;
  double d = 0.0;
};

/// Right-hand side of the fluid limit
///   b' = d,   d' = h_F(Gamma b) Gamma d (1 - b - d) - d
/// with the regularized hazard.
FluidState fluid_rhs(const ThresholdDistribution& dist, double gamma_scale, double b, double d, double eps_haz);

/// Integrates the fluid limit from (b, d) = (0, d0) to t_end with RK4.
/// Stops early (terminal = true) once d < opts.d_stop. Throws NumericalError
/// if the state leaves the simplex by more than opts.simplex_tol.
Trajectory integrate(const ThresholdDistribution& dist, double gamma_scale, double d0, double t_end,
                     const IntegratorOptions& opts = {});

/// Uniform thresholds solve in closed form with r = 1 - Gamma + Gamma d0:
///   b(t) = (d0 / r)(1 - e^{-rt}),   d(t) = d0 e^{-rt}.
struct UniformClosedForm {
  double d0;
  double gamma_scale;

  UniformClosedForm(double gamma_scale, double d0);

  double rate() const noexcept { return 1.0 - gamma_scale + gamma_scale * d0; }
  FluidState at(double t) const;
  /// a(t) = b(t) + d(t) = d0 (1/r - (1/r - 1) e^{-rt}).
  double active(double t) const;
  double terminal() const { return d0 / rate(); }
};

FluidState uniform_closed_form(double gamma_scale, double d0, double t);

/// Closed-form trajectory on the grid 0, dt, 2 dt, ..., t_end.
Trajectory uniform_closed_form_trajectory(double gamma_scale, double d0, double t_end, double dt);

/// b_inf = d0 / (1 - Gamma + Gamma d0) for uniform thresholds.
double terminal_spread(double gamma_scale, double d0);

/// Inverse of terminal_spread: d0 = b_inf (1 - Gamma) / (1 - b_inf Gamma).
/// Throws DomainError when Gamma = 1 (every d0 > 0 reaches b_inf = 1).
double required_seed(double gamma_scale, double b_inf);

/// Classic SIR with infection rate beta and recovery rate 1, mapped onto the
/// cascade variables (b = recovered, d = infective).
Trajectory integrate_sir(double beta, double d0, double t_end, const IntegratorOptions& opts = {});

struct SirComparison {
  Trajectory hilt;
  Trajectory sir;
  double sup_distance = 0.0;
};

/// Exponential(lambda) thresholds against SIR(lambda Gamma, 1) on identical
/// step grids (early stopping is disabled so the grids match).
SirComparison sir_comparator(double lambda, double gamma_scale, double d0, double t_end,
                             IntegratorOptions opts = {});

struct FixedPointResult {
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Iterates r <- F(r) from r0 until |r_{k+1} - r_k| < tol. Throws
/// ConvergenceError (carrying the last iterate) after max_iter iterations.
FixedPointResult granovetter_fixed_point(const ThresholdDistribution& dist, double r0, std::size_t max_iter,
                                         double tol);

/// Times of the strict interior local maxima of d(t) whose prominence is at
/// least `prominence`. Throws DomainError for fewer than three samples.
std::vector<double> detect_modes(const Trajectory& traj, double prominence = 1e-4);

/// Interior modes plus the boundary maximum at t = 0 when d starts out
/// decreasing. d(t) is unimodal exactly when this is 1.
std::size_t count_modes(const Trajectory& traj, double prominence = 1e-4);

}  // namespace hilt
