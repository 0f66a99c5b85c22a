#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hilt {

enum class Route { Exact, Scaled, Ode, ClosedForm };

std::string_view to_string(Route route) noexcept;
Route route_from_string(std::string_view name);

/// One point of a trajectory: fluid (or step) time and the fractions of
/// exhausted-active (b) and infectious (d) nodes.
struct Sample {
  double time = 0.0;
  double b = 0.0;
  double d = 0.0;
};

/// Ordered time series of cascade states. Times are strictly increasing and
/// b is nondecreasing along the series.
struct Trajectory {
  Route route = Route::Ode;
  std::vector<Sample> samples;
  bool terminal = false;
  /// Number of steps in which 1 - F(influence) hit zero with inactive nodes
  /// left and every remaining node was activated.
  std::size_t degenerate_events = 0;

  bool empty() const noexcept { return samples.empty(); }
  const Sample& back() const { return samples.back(); }

  /// Terminal activated fraction b + d of the last sample (residual infectious
  /// mass of an ODE trajectory is counted as active).
  double final_active() const;

  /// State at time t by last-value (step) interpolation; t before the first
  /// sample returns the first sample.
  Sample value_at(double t) const;

  /// State at time t by linear interpolation; beyond the last sample the last
  /// state is held.
  Sample interpolate(double t) const;
};

/// Largest |b1 - b2| or |d1 - d2| over the supplied grid, with the first
/// trajectory evaluated by last-value and the second by linear interpolation.
double sup_distance_on_grid(const Trajectory& step_path, const Trajectory& smooth_path,
                            const std::vector<double>& grid);

/// Largest componentwise difference of two trajectories sampled at identical times.
double sup_distance_aligned(const Trajectory& a, const Trajectory& b);

}  // namespace hilt
