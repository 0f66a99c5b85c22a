#pragma once

#include <cstddef>
#include <vector>

#include "hilt/rk4.hpp"
#include "hilt/threshold_dist.hpp"
#include "hilt/trajectory.hpp"

namespace hilt {

/// Population split into M communities. `sizes` are population fractions
/// n_i (summing to 1); influence(i, j) >= 0 is the strength from community i
/// to community j, so a node of i weighs g_ij / N on a node of j.
class CommunityNetwork {
 public:
  CommunityNetwork(std::vector<double> sizes, std::vector<double> influence_row_major,
                   std::vector<ThresholdDistribution> dists);

  std::size_t size() const noexcept { return sizes_.size(); }
  double community_size(std::size_t i) const { return sizes_.at(i); }
  const std::vector<double>& sizes() const noexcept { return sizes_; }
  double influence(std::size_t from, std::size_t to) const { return influence_.at(from * size() + to); }
  const ThresholdDistribution& dist(std::size_t i) const { return dists_.at(i); }

  /// [G^T v]_i = sum_j g_ji v_j: influence received by community i.
  std::vector<double> received(const std::vector<double>& v) const;

 private:
  std::vector<double> sizes_;
  std::vector<double> influence_;
  std::vector<ThresholdDistribution> dists_;
};

/// Per-community absolute fractions over time (b_i + d_i <= n_i).
struct MultiTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> b;  // b[k][i]
  std::vector<std::vector<double>> d;
  bool terminal = false;

  /// sum_i (b_i + d_i) of the last sample.
  double total_final() const;
  /// Community i as a single-class trajectory (absolute fractions).
  Trajectory community(std::size_t i) const;
};

/// Integrates, for every community i,
///   b_i' = d_i,
///   d_i' = -d_i + [G^T d]_i h_{F_i}([G^T b]_i) (n_i - b_i - d_i)
/// from b = 0, d = d_init. Same step/stop contract as the single-class engine.
MultiTrajectory integrate_multiclass(const CommunityNetwork& net, const std::vector<double>& d_init, double t_end,
                                     const IntegratorOptions& opts = {});

struct AllocationPoint {
  std::vector<double> seeds;
  double total_spread = 0.0;
};

struct SeedAllocation {
  AllocationPoint best;
  std::vector<AllocationPoint> surface;
};

/// Exhaustive search over allocations d(0) with sum_i d_i(0) = d0_total on
/// a lattice with `resolution` points per free dimension; allocations with
/// some d_i(0) > n_i are skipped. Maximizes sum_i b_i(inf), approximated by
/// integrating to t_end (or the terminal stop, whichever comes first).
SeedAllocation optimize_seed(const CommunityNetwork& net, double d0_total, std::size_t resolution,
                             double t_end = 200.0, const IntegratorOptions& opts = {}, unsigned threads = 0);

}  // namespace hilt
