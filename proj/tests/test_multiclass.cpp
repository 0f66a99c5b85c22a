#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hilt/errors.hpp"
#include "hilt/fluid_ode.hpp"
#include "hilt/multiclass.hpp"

using namespace hilt;

namespace {

// Two communities of sizes (0.7, 0.3), exponential(1) thresholds, strong
// in-community influence 2 and weak cross influence 0.1.
CommunityNetwork two_communities() {
  const auto expo = ThresholdDistribution::exponential(1.0);
  return CommunityNetwork({0.7, 0.3}, {2.0, 0.1, 0.1, 2.0}, {expo, expo});
}

}  // namespace

TEST_CASE("network validation") {
  const auto u = ThresholdDistribution::uniform();
  CHECK_THROWS_AS(CommunityNetwork({0.5, 0.4}, {1, 0, 0, 1}, {u, u}), DomainError);
  CHECK_THROWS_AS(CommunityNetwork({0.5, 0.5}, {1, 0, 0}, {u, u}), DomainError);
  CHECK_THROWS_AS(CommunityNetwork({0.5, 0.5}, {1, -0.1, 0, 1}, {u, u}), DomainError);
  CHECK_THROWS_AS(CommunityNetwork({0.5, 0.5}, {1, 0, 0, 1}, {u}), DomainError);
  CHECK_THROWS_AS(CommunityNetwork({1.0, 0.0}, {1, 0, 0, 1}, {u, u}), DomainError);
  CHECK_THROWS_AS(CommunityNetwork({}, {}, {}), DomainError);

  const CommunityNetwork net({0.25, 0.75}, {1.0, 2.0, 3.0, 4.0}, {u, u});
  CHECK(net.influence(0, 1) == 2.0);
  const std::vector<double> got = net.received({1.0, 10.0});
  CHECK(got[0] == doctest::Approx(1.0 * 1.0 + 3.0 * 10.0));
  CHECK(got[1] == doctest::Approx(2.0 * 1.0 + 4.0 * 10.0));

  CHECK_THROWS_AS(integrate_multiclass(net, {0.3, 0.1}, 1.0), DomainError);
  CHECK_THROWS_AS(integrate_multiclass(net, {0.1}, 1.0), DomainError);
}

TEST_CASE("single community reduces to the single-class engine") {
  for (const auto& [dist, gamma] : std::vector<std::pair<ThresholdDistribution, double>>{
           {ThresholdDistribution::uniform(), 0.9},
           {ThresholdDistribution::weibull(1.0, 5.0), 5.0},
           {ThresholdDistribution::exponential(2.0), 1.5}}) {
    const CommunityNetwork net({1.0}, {gamma}, {dist});
    const MultiTrajectory multi = integrate_multiclass(net, {0.2}, 20.0);
    const Trajectory single = integrate(dist, gamma, 0.2, 20.0);
    CHECK(sup_distance_aligned(multi.community(0), single) <= 1e-12);
    CHECK(multi.terminal == single.terminal);
  }
}

TEST_CASE("diagonal influence decouples into rescaled single-class systems") {
  // With b_i = n_i x, d_i = n_i y, community i follows the single-class
  // system with Gamma' = g_ii n_i and seed d_i(0) / n_i.
  const std::vector<double> sizes{0.5, 0.3, 0.2};
  const std::vector<double> g{1.5, 4.0, 2.5};
  const std::vector<ThresholdDistribution> dists{ThresholdDistribution::exponential(1.0),
                                                 ThresholdDistribution::weibull(1.0, 2.0),
                                                 ThresholdDistribution::loglogistic(1.0, 3.0)};
  std::vector<double> matrix(9, 0.0);
  for (std::size_t i = 0; i < 3; ++i) matrix[i * 3 + i] = g[i];
  const CommunityNetwork net(sizes, matrix, dists);
  const std::vector<double> seeds{0.05, 0.06, 0.1};
  IntegratorOptions opts;
  opts.d_stop = 0.0;
  const MultiTrajectory multi = integrate_multiclass(net, seeds, 15.0, opts);
  for (std::size_t i = 0; i < 3; ++i) {
    const Trajectory alone = integrate(dists[i], g[i] * sizes[i], seeds[i] / sizes[i], 15.0, opts);
    const Trajectory part = multi.community(i);
    REQUIRE(alone.samples.size() == part.samples.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < part.samples.size(); ++k) {
      worst = std::max({worst, std::abs(part.samples[k].b - sizes[i] * alone.samples[k].b),
                        std::abs(part.samples[k].d - sizes[i] * alone.samples[k].d)});
    }
    CAPTURE(i);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("property: per-community simplex and monotone b") {
  const CommunityNetwork net = two_communities();
  const MultiTrajectory traj = integrate_multiclass(net, {0.1, 0.2}, 50.0);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(traj.b[k][i] >= -1e-9);
      CHECK(traj.d[k][i] >= -1e-9);
      CHECK(traj.b[k][i] + traj.d[k][i] <= net.community_size(i) + 1e-9);
      if (k > 0) CHECK(traj.b[k][i] >= traj.b[k - 1][i]);
    }
  }
}

TEST_CASE("seeding the smaller community wins") {
  const CommunityNetwork net = two_communities();
  const double smaller = integrate_multiclass(net, {0.0, 0.3}, 200.0).total_final();
  const double larger = integrate_multiclass(net, {0.3, 0.0}, 200.0).total_final();
  CAPTURE(smaller);
  CAPTURE(larger);
  CHECK(smaller > larger);
}

TEST_CASE("grid optimum splits the budget") {
  const SeedAllocation result = optimize_seed(two_communities(), 0.3, 31);
  CHECK(result.best.seeds[0] > 0.0);
  CHECK(result.best.seeds[1] > 0.0);
  CHECK(result.best.seeds[0] == doctest::Approx(0.1).epsilon(0.11));
  CHECK(result.best.seeds[1] == doctest::Approx(0.2).epsilon(0.06));
  CHECK(result.surface.size() == 31);
  for (const auto& p : result.surface) CHECK(result.best.total_spread >= p.total_spread);
}

TEST_CASE("property: budget conservation and feasibility on the surface") {
  const auto expo = ThresholdDistribution::exponential(1.0);
  const CommunityNetwork net({0.2, 0.3, 0.5}, {2, 0.1, 0.1, 0.1, 2, 0.1, 0.1, 0.1, 2}, {expo, expo, expo});
  IntegratorOptions opts;
  opts.step = 0.01;
  const SeedAllocation result = optimize_seed(net, 0.3, 11, 50.0, opts);
  CHECK_FALSE(result.surface.empty());
  for (const auto& p : result.surface) {
    CHECK(std::accumulate(p.seeds.begin(), p.seeds.end(), 0.0) == doctest::Approx(0.3).epsilon(1e-12));
    for (std::size_t i = 0; i < 3; ++i) CHECK(p.seeds[i] <= net.community_size(i) + 1e-12);
  }
}

TEST_CASE("symmetric network has a swap-symmetric surface") {
  const auto dist = ThresholdDistribution::weibull(1.0, 2.0);
  const CommunityNetwork net({0.5, 0.5}, {3.0, 0.5, 0.5, 3.0}, {dist, dist});
  IntegratorOptions opts;
  opts.step = 0.01;
  const SeedAllocation result = optimize_seed(net, 0.2, 21, 60.0, opts);
  REQUIRE(result.surface.size() == 21);
  for (std::size_t k = 0; k < 21; ++k) {
    const auto& a = result.surface[k];
    const auto& b = result.surface[20 - k];
    CHECK(a.seeds[0] == doctest::Approx(b.seeds[1]).epsilon(1e-12));
    CHECK(a.total_spread == doctest::Approx(b.total_spread).epsilon(1e-9));
  }
}

TEST_CASE("optimizer edge cases") {
  const CommunityNetwork one({1.0}, {0.9}, {ThresholdDistribution::uniform()});
  const SeedAllocation single = optimize_seed(one, 0.25, 5);
  REQUIRE(single.surface.size() == 1);
  CHECK(single.best.seeds[0] == 0.25);
  CHECK(single.best.total_spread == doctest::Approx(terminal_spread(0.9, 0.25)).epsilon(1e-6));

  CHECK_THROWS_AS(optimize_seed(two_communities(), 0.0, 31), DomainError);
  CHECK_THROWS_AS(optimize_seed(two_communities(), 1.2, 31), DomainError);
  CHECK_THROWS_AS(optimize_seed(two_communities(), 0.3, 1), DomainError);

  // Single-thread and pooled evaluation agree exactly.
  IntegratorOptions opts;
  opts.step = 0.01;
  const SeedAllocation a = optimize_seed(two_communities(), 0.3, 7, 50.0, opts, 1);
  const SeedAllocation b = optimize_seed(two_communities(), 0.3, 7, 50.0, opts, 4);
  for (std::size_t k = 0; k < a.surface.size(); ++k) CHECK(a.surface[k].total_spread == b.surface[k].total_spread);
}
