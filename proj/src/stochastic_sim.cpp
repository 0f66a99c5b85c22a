#include "hilt/stochastic_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "hilt/errors.hpp"

namespace hilt {

std::int64_t HiltConfig::initial_infectious() const {
  const auto count = static_cast<std::int64_t>(std::llround(d0 * static_cast<double>(n)));
  if (d0 > 0.0 && count < 1) return 1;
  return std::min(count, n);
}

void HiltConfig::validate() const {
  std::ostringstream os;
  if (n < 1) {
    os << "population size N must be >= 1, got " << n;
  } else if (!(gamma_scale >= 0.0) || !std::isfinite(gamma_scale)) {
    os << "influence scale Gamma must be finite and >= 0, got " << gamma_scale;
  } else if (!(d0 > 0.0 && d0 <= 1.0)) {
    os << "initial infectious fraction d0 must lie in (0, 1], got " << d0;
  } else if (dist.is_uniform() && gamma_scale > 1.0) {
    os << "uniform thresholds require Gamma <= 1, got " << gamma_scale;
  } else {
    return;
  }
  throw DomainError(os.str());
}

CascadeState initial_state(const HiltConfig& cfg) {
  cfg.validate();
  return CascadeState{0, cfg.initial_infectious(), 0};
}

double conditional_activation(const HiltConfig& cfg, std::int64_t from, std::int64_t to, bool& degenerate) {
  const double w = cfg.edge_weight();
  const double f_from = cfg.dist.cdf(w * static_cast<double>(from));
  const double survival = 1.0 - f_from;
  if (!(survival > 0.0)) {
    degenerate = true;
    return 1.0;
  }
  const double f_to = cfg.dist.cdf(w * static_cast<double>(to));
  return std::clamp((f_to - f_from) / survival, 0.0, 1.0);
}

StepOutcome step_exact(const CascadeState& state, const HiltConfig& cfg, Rng& rng) {
  StepOutcome out{state, false, false};
  if (state.infectious == 0) {
    out.terminal = true;
    return out;
  }
  const std::int64_t inactive = cfg.n - state.exhausted - state.infectious;
  const std::int64_t exhausted = state.exhausted + state.infectious;
  std::int64_t activated = 0;
  if (inactive > 0) {
    bool degenerate = false;
    const double p = conditional_activation(cfg, state.exhausted, exhausted, degenerate);
    activated = rng.binomial(inactive, p);
    out.degenerate = degenerate;
  }
  out.state = CascadeState{exhausted, activated, state.step + 1};
  out.terminal = activated == 0;
  return out;
}

StepOutcome step_scaled(const CascadeState& state, const HiltConfig& cfg, Rng& rng) {
  StepOutcome out{state, false, false};
  if (state.infectious == 0) {
    out.terminal = true;
    return out;
  }
  const std::int64_t fired = rng.binomial(state.infectious, 1.0 / static_cast<double>(cfg.n));
  const std::int64_t inactive = cfg.n - state.exhausted - state.infectious;
  std::int64_t activated = 0;
  if (fired > 0 && inactive > 0) {
    bool degenerate = false;
    const double q = conditional_activation(cfg, state.exhausted, state.exhausted + fired, degenerate);
    activated = rng.binomial(inactive, q);
    out.degenerate = degenerate;
  }
  out.state = CascadeState{state.exhausted + fired, state.infectious - fired + activated, state.step + 1};
  out.terminal = out.state.infectious == 0;
  return out;
}

Trajectory run_cascade(const HiltConfig& cfg, Route route, std::uint64_t seed, std::int64_t max_steps) {
  if (route != Route::Exact && route != Route::Scaled) {
    throw DomainError("run_cascade supports the exact and scaled routes only");
  }
  if (max_steps <= 0) throw DomainError("max_steps must be positive");
  CascadeState state = initial_state(cfg);

  const double n = static_cast<double>(cfg.n);
  const double time_unit = route == Route::Scaled ? 1.0 / n : 1.0;
  auto record = [&](Trajectory& traj, const CascadeState& s) {
    traj.samples.push_back(Sample{static_cast<double>(s.step) * time_unit, static_cast<double>(s.exhausted) / n,
                                  static_cast<double>(s.infectious) / n});
  };

  Trajectory traj;
  traj.route = route;
  record(traj, state);
  Rng rng(seed);
  for (std::int64_t k = 0; k < max_steps && state.infectious > 0; ++k) {
    const StepOutcome next = route == Route::Exact ? step_exact(state, cfg, rng) : step_scaled(state, cfg, rng);
    if (next.degenerate) ++traj.degenerate_events;
    state = next.state;
    record(traj, state);
  }
  traj.terminal = state.infectious == 0;
  return traj;
}

namespace {

std::vector<double> union_grid(const std::vector<Trajectory>& runs) {
  std::vector<double> grid;
  for (const auto& run : runs) {
    for (const auto& s : run.samples) grid.push_back(s.time);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

Ensemble ensemble(const HiltConfig& cfg, Route route, std::size_t n_runs, std::uint64_t seed,
                  std::int64_t max_steps, unsigned threads) {
  if (n_runs < 1) throw DomainError("ensemble needs at least one run");
  cfg.validate();

  Ensemble result;
  result.runs.resize(n_runs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_runs));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n_runs; i = next++) {
      result.runs[i] = run_cascade(cfg, route, derive_seed(seed, i), max_steps);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const std::vector<double> grid = union_grid(result.runs);
  result.mean.route = route;
  result.stddev.route = route;
  result.mean.terminal = std::all_of(result.runs.begin(), result.runs.end(), [](const Trajectory& t) { return t.terminal; });
  result.stddev.terminal = result.mean.terminal;
  result.mean.samples.assign(grid.size(), Sample{});
  result.stddev.samples.assign(grid.size(), Sample{});

  std::vector<double> sum_b(grid.size()), sum_d(grid.size()), sq_b(grid.size()), sq_d(grid.size());
  for (const auto& run : result.runs) {
    std::size_t j = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      while (j + 1 < run.samples.size() && run.samples[j + 1].time <= grid[g]) ++j;
      const Sample& s = run.samples[j];
      sum_b[g] += s.b;
      sum_d[g] += s.d;
      sq_b[g] += s.b * s.b;
      sq_d[g] += s.d * s.d;
    }
  }
  const double runs = static_cast<double>(n_runs);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double mb = sum_b[g] / runs;
    const double md = sum_d[g] / runs;
    result.mean.samples[g] = Sample{grid[g], mb, md};
    const double vb = n_runs > 1 ? std::max(0.0, (sq_b[g] - runs * mb * mb) / (runs - 1.0)) : 0.0;
    const double vd = n_runs > 1 ? std::max(0.0, (sq_d[g] - runs * md * md) / (runs - 1.0)) : 0.0;
    result.stddev.samples[g] = Sample{grid[g], std::sqrt(vb), std::sqrt(vd)};
  }
  return result;
}

}  // namespace hilt
