#include "hilt/multiclass.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "hilt/errors.hpp"

namespace hilt {

CommunityNetwork::CommunityNetwork(std::vector<double> sizes, std::vector<double> influence_row_major,
                                   std::vector<ThresholdDistribution> dists)
    : sizes_(std::move(sizes)), influence_(std::move(influence_row_major)), dists_(std::move(dists)) {
  const std::size_t m = sizes_.size();
  if (m == 0) throw DomainError("community network needs at least one community");
  if (influence_.size() != m * m) throw DomainError("influence matrix must be M x M");
  if (dists_.size() != m) throw DomainError("one threshold distribution per community is required");
  for (double n : sizes_) {
    if (!(n > 0.0)) throw DomainError("community sizes must be positive");
  }
  const double total = std::accumulate(sizes_.begin(), sizes_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "community sizes must sum to 1, got " << total;
    throw DomainError(os.str());
  }
  for (double g : influence_) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("influence entries must be finite and >= 0");
  }
}

std::vector<double> CommunityNetwork::received(const std::vector<double>& v) const {
  const std::size_t m = size();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) out[i] += influence(j, i) * v[j];
  }
  return out;
}

double MultiTrajectory::total_final() const {
  if (times.empty()) throw DomainError("empty multiclass trajectory");
  double total = 0.0;
  for (std::size_t i = 0; i < b.back().size(); ++i) total += b.back()[i] + d.back()[i];
  return total;
}

Trajectory MultiTrajectory::community(std::size_t i) const {
  Trajectory traj;
  traj.route = Route::Ode;
  traj.terminal = terminal;
  traj.samples.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) traj.samples.push_back(Sample{times[k], b[k].at(i), d[k].at(i)});
  return traj;
}

MultiTrajectory integrate_multiclass(const CommunityNetwork& net, const std::vector<double>& d_init, double t_end,
                                     const IntegratorOptions& opts) {
  const std::size_t m = net.size();
  if (d_init.size() != m) throw DomainError("initial seed vector must have one entry per community");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(d_init[i] >= 0.0 && d_init[i] <= net.community_size(i) + 1e-12)) {
      throw DomainError("initial seed of each community must lie in [0, n_i]");
    }
  }
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  if (!(opts.step > 0.0)) throw DomainError("integrator step must be positive");

  // y = (b_1..b_M, d_1..d_M)
  auto rhs = [&](const std::vector<double>& y) {
    const std::vector<double> b(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m));
    const std::vector<double> d(y.begin() + static_cast<std::ptrdiff_t>(m), y.end());
    const std::vector<double> push = net.received(d);
    const std::vector<double> load = net.received(b);
    std::vector<double> dy(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      dy[i] = d[i];
      const double inactive = net.community_size(i) - b[i] - d[i];
      const double gain = push[i] == 0.0 ? 0.0 : push[i] * net.dist(i).hazard_regularized(load[i], opts.eps_haz) * inactive;
      dy[m + i] = gain - d[i];
    }
    return dy;
  };

  MultiTrajectory traj;
  auto record = [&](double t, const std::vector<double>& y) {
    traj.times.push_back(t);
    traj.b.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m));
    traj.d.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(m), y.end());
  };

  std::vector<double> y0(2 * m, 0.0);
  std::copy(d_init.begin(), d_init.end(), y0.begin() + static_cast<std::ptrdiff_t>(m));
  record(0.0, y0);

  const std::size_t stride = std::max<std::size_t>(1, opts.record_stride);
  std::size_t count = 0;
  std::vector<double> last;
  double last_t = 0.0;
  bool pending = false;
  detail::rk4_drive(rhs, y0, t_end, opts, [&](double t, const std::vector<double>& y) {
    double max_d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double b = y[i];
      const double d = y[m + i];
      if (b < -opts.simplex_tol || d < -opts.simplex_tol || b + d > net.community_size(i) + opts.simplex_tol ||
          !std::isfinite(b) || !std::isfinite(d)) {
        std::ostringstream os;
        os << "community " << i << " left its simplex at t = " << t << "; reduce the integrator step";
        throw NumericalError(os.str());
      }
      max_d = std::max(max_d, d);
    }
    const bool done = opts.d_stop > 0.0 && max_d < opts.d_stop;
    if (done) traj.terminal = true;
    if (done || ++count % stride == 0) {
      record(t, y);
      pending = false;
    } else {
      last = y;
      last_t = t;
      pending = true;
    }
    return !done;
  });
  if (pending) record(last_t, last);
  return traj;
}

namespace {

// All k in N^M with sum k = total, in lexicographic order.
void compositions(std::size_t parts, std::size_t total, std::vector<std::size_t>& current,
                  std::vector<std::vector<std::size_t>>& out) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    current.push_back(k);
    compositions(parts, total - k, current, out);
    current.pop_back();
  }
}

}  // namespace

SeedAllocation optimize_seed(const CommunityNetwork& net, double d0_total, std::size_t resolution, double t_end,
                             const IntegratorOptions& opts, unsigned threads) {
  if (!(d0_total > 0.0 && d0_total <= 1.0)) throw DomainError("seed budget must lie in (0, 1]");
  if (resolution < 2) throw DomainError("grid resolution must be >= 2");
  const std::size_t m = net.size();
  const double capacity = std::accumulate(net.sizes().begin(), net.sizes().end(), 0.0);
  if (d0_total > capacity + 1e-12) throw DomainError("seed budget exceeds the population");

  const std::size_t divisions = resolution - 1;
  std::vector<std::vector<std::size_t>> lattice;
  std::vector<std::size_t> scratch;
  compositions(m, divisions, scratch, lattice);

  std::vector<AllocationPoint> candidates;
  for (const auto& k : lattice) {
    AllocationPoint p;
    p.seeds.resize(m);
    bool feasible = true;
    double assigned = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      p.seeds[i] = d0_total * static_cast<double>(k[i]) / static_cast<double>(divisions);
      assigned += p.seeds[i];
    }
    // Last share takes the remainder so the budget holds to rounding.
    p.seeds[m - 1] = d0_total - assigned;
    for (std::size_t i = 0; i < m; ++i) {
      if (p.seeds[i] < 0.0) p.seeds[i] = 0.0;
      if (p.seeds[i] > net.community_size(i) + 1e-12) feasible = false;
    }
    if (feasible) candidates.push_back(std::move(p));
  }
  if (candidates.empty()) throw DomainError("no feasible allocation on the grid");

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, candidates.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      candidates[i].total_spread = integrate_multiclass(net, candidates[i].seeds, t_end, opts).total_final();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SeedAllocation result;
  result.surface = std::move(candidates);
  result.best = *std::max_element(result.surface.begin(), result.surface.end(),
                                  [](const AllocationPoint& a, const AllocationPoint& b) {
                                    return a.total_spread < b.total_spread;
                                  });
  return result;
}

}  // namespace hilt
