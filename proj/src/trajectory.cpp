#include "hilt/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hilt/errors.hpp"

namespace hilt {

std::string_view to_string(Route route) noexcept {
  switch (route) {
    case Route::Exact:
      return "exact";
    case Route::Scaled:
      return "scaled";
    case Route::Ode:
      return "ode";
    case Route::ClosedForm:
      return "closed-form";
  }
  return "unknown";
}

Route route_from_string(std::string_view name) {
  if (name == "exact") return Route::Exact;
  if (name == "scaled") return Route::Scaled;
  if (name == "ode") return Route::Ode;
  if (name == "closed-form") return Route::ClosedForm;
  throw DomainError("unknown route '" + std::string(name) + "'");
}

double Trajectory::final_active() const {
  if (samples.empty()) throw DomainError("empty trajectory");
  return samples.back().b + samples.back().d;
}

namespace {

// Index of the last sample with time <= t (0 when t precedes every sample).
std::size_t floor_index(const std::vector<Sample>& samples, double t) {
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double value, const Sample& s) { return value < s.time; });
  if (it == samples.begin()) return 0;
  return static_cast<std::size_t>(std::distance(samples.begin(), it) - 1);
}

}  // namespace

Sample Trajectory::value_at(double t) const {
  if (samples.empty()) throw DomainError("empty trajectory");
  Sample s = samples[floor_index(samples, t)];
  s.time = t;
  return s;
}

Sample Trajectory::interpolate(double t) const {
  if (samples.empty()) throw DomainError("empty trajectory");
  const std::size_t i = floor_index(samples, t);
  if (t <= samples.front().time || i + 1 >= samples.size()) {
    Sample s = samples[i];
    s.time = t;
    return s;
  }
  const Sample& lo = samples[i];
  const Sample& hi = samples[i + 1];
  const double w = (t - lo.time) / (hi.time - lo.time);
  return Sample{t, lo.b + w * (hi.b - lo.b), lo.d + w * (hi.d - lo.d)};
}

double sup_distance_on_grid(const Trajectory& step_path, const Trajectory& smooth_path,
                            const std::vector<double>& grid) {
  double worst = 0.0;
  for (double t : grid) {
    const Sample a = step_path.value_at(t);
    const Sample b = smooth_path.interpolate(t);
    worst = std::max({worst, std::abs(a.b - b.b), std::abs(a.d - b.d)});
  }
  return worst;
}

double sup_distance_aligned(const Trajectory& a, const Trajectory& b) {
  if (a.samples.size() != b.samples.size()) {
    throw DomainError("trajectories are not sampled on the same grid");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    worst = std::max({worst, std::abs(a.samples[i].b - b.samples[i].b), std::abs(a.samples[i].d - b.samples[i].d)});
  }
  return worst;
}

}  // namespace hilt
