#include "hilt/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hilt/errors.hpp"

namespace hilt {

double ensemble_fluid_distance(const Ensemble& ens, const Trajectory& ode, double t_end) {
  std::vector<double> grid;
  for (const auto& s : ens.mean.samples) {
    if (s.time <= t_end) grid.push_back(s.time);
  }
  if (grid.empty() || grid.back() < t_end) grid.push_back(t_end);
  return sup_distance_on_grid(ens.mean, ode, grid);
}

std::vector<ConvergenceRow> convergence_report(HiltConfig cfg, Route route, const std::vector<std::int64_t>& n_list,
                                               std::size_t runs, std::uint64_t seed, double t_end,
                                               const IntegratorOptions& opts) {
  if (n_list.empty()) throw DomainError("N list must not be empty");
  if (!std::is_sorted(n_list.begin(), n_list.end())) throw DomainError("N list must be ascending");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");

  const Trajectory ode = integrate(cfg.dist, cfg.gamma_scale, cfg.d0, t_end, opts);
  std::vector<ConvergenceRow> rows;
  for (std::int64_t n : n_list) {
    cfg.n = n;
    cfg.validate();
    const double steps_per_unit = route == Route::Scaled ? static_cast<double>(n) : 1.0;
    const auto max_steps = static_cast<std::int64_t>(std::ceil(t_end * steps_per_unit)) + 1;
    const Ensemble ens = ensemble(cfg, route, runs, seed, max_steps);
    double noise = 0.0;
    for (const auto& s : ens.stddev.samples) noise = std::max({noise, s.b, s.d});
    noise *= 3.0 / std::sqrt(static_cast<double>(runs));
    rows.push_back(ConvergenceRow{n, ensemble_fluid_distance(ens, ode, t_end), noise});
  }
  return rows;
}

bool nonincreasing_within_noise(const std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].sup_dist > rows[i - 1].sup_dist + rows[i].noise) return false;
  }
  return true;
}

}  // namespace hilt
