#pragma once

#include <cstdint>
#include <vector>

#include "hilt/rng.hpp"
#include "hilt/threshold_dist.hpp"
#include "hilt/trajectory.hpp"

namespace hilt {

/// Homogeneous influence network: N nodes on a complete graph, every edge
/// carrying weight gamma = Gamma / N, i.i.d. thresholds drawn from `dist`.
struct HiltConfig {
  std::int64_t n = 1000;
  double gamma_scale = 0.9;  // Gamma
  double d0 = 0.2;
  ThresholdDistribution dist = ThresholdDistribution::uniform();

  /// Per-edge weight gamma = Gamma / N.
  double edge_weight() const { return gamma_scale / static_cast<double>(n); }
  /// round(d0 * N), at least 1 when d0 > 0.
  std::int64_t initial_infectious() const;
  /// Throws DomainError on N < 1, Gamma < 0, d0 outside (0, 1], or a
  /// uniform threshold law with Gamma > 1.
  void validate() const;
};

/// Node counts at step k: B exhausted-active, D infectious.
struct CascadeState {
  std::int64_t exhausted = 0;  // B
  std::int64_t infectious = 0;  // D
  std::int64_t step = 0;        // k
};

struct StepOutcome {
  CascadeState state;
  bool terminal = false;    // no infectious nodes remain
  bool degenerate = false;  // 1 - F(gamma B) = 0 with inactive nodes left
};

CascadeState initial_state(const HiltConfig& cfg);

/// Probability that an inactive node that resisted influence gamma*from
/// activates once the influence reaches gamma*to. Sets `degenerate` and
/// returns 1 when the survival 1 - F(gamma*from) is zero.
double conditional_activation(const HiltConfig& cfg, std::int64_t from, std::int64_t to, bool& degenerate);

/// One step of the unscaled chain: every infectious node exerts its
/// influence, B' = B + D and D' ~ Binomial(N - B - D, p) with
/// p = [F(gamma(B + D)) - F(gamma B)] / [1 - F(gamma B)].
StepOutcome step_exact(const CascadeState& state, const HiltConfig& cfg, Rng& rng);

/// One minislot (fluid duration 1/N) of the scaled chain: each infectious
/// node fires with probability 1/N; fired nodes move to B and the inactive
/// nodes face the conditional activation law for the added influence.
StepOutcome step_scaled(const CascadeState& state, const HiltConfig& cfg, Rng& rng);

/// Iterates the chosen step until D = 0 or `max_steps` steps. Time stamps
/// are k (exact) or k / N (scaled). A truncated run has terminal = false.
Trajectory run_cascade(const HiltConfig& cfg, Route route, std::uint64_t seed, std::int64_t max_steps);

struct Ensemble {
  std::vector<Trajectory> runs;
  Trajectory mean;
  /// Pointwise standard deviation; stored in the b/d fields.
  Trajectory stddev;
};

/// `n_runs` independent cascades, run i seeded with derive_seed(seed, i).
/// Runs execute on `threads` workers (0 picks the hardware concurrency);
/// results do not depend on the thread count. The mean/stddev are taken on
/// the union of sample times using last-value interpolation.
Ensemble ensemble(const HiltConfig& cfg, Route route, std::size_t n_runs, std::uint64_t seed,
                  std::int64_t max_steps, unsigned threads = 0);

}  // namespace hilt
