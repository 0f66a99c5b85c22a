#pragma once

#include <cstdint>
#include <vector>

#include "hilt/fluid_ode.hpp"
#include "hilt/stochastic_sim.hpp"

namespace hilt {

/// Sup-norm distance between the ensemble mean of a stochastic route and
/// the fluid ODE, over the mean's sample times in [0, t_end] plus t_end
/// itself. The ODE is linearly interpolated between its steps.
double ensemble_fluid_distance(const Ensemble& ens, const Trajectory& ode, double t_end);

struct ConvergenceRow {
  std::int64_t n = 0;
  double sup_dist = 0.0;
  /// Three standard errors of the ensemble mean, maximised over the grid.
  double noise = 0.0;
};

/// For each N in `n_list`: `runs` cascades of `route` with base config `cfg`
/// (N overridden), their mean against integrate(cfg.dist, ...) on [0, t_end].
std::vector<ConvergenceRow> convergence_report(HiltConfig cfg, Route route, const std::vector<std::int64_t>& n_list,
                                               std::size_t runs, std::uint64_t seed, double t_end,
                                               const IntegratorOptions& opts = {});

/// sup_dist[i+1] <= sup_dist[i] + noise[i+1] for every consecutive pair.
bool nonincreasing_within_noise(const std::vector<ConvergenceRow>& rows);

}  // namespace hilt
