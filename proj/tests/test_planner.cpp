#include <doctest.h>

#include <cmath>

#include "hilt/errors.hpp"
#include "hilt/fluid_ode.hpp"
#include "hilt/planner.hpp"

using namespace hilt;

namespace {

// Root of a(T) = alpha on the closed form, by plain bisection in T.
double solve_time_numerically(double alpha, double d0, double gamma) {
  const UniformClosedForm form(gamma, d0);
  double lo = 0.0, hi = 1.0;
  while (form.active(hi) < alpha) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (form.active(mid) < alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("time to reach") {
  const double t = time_to_reach(0.5, 0.2, 0.9);
  CHECK(t == doctest::Approx(3.1268).epsilon(1e-4));
  CHECK(t == doctest::Approx(solve_time_numerically(0.5, 0.2, 0.9)).epsilon(1e-10));
  CHECK(active_at(t, 0.2, 0.9) == doctest::Approx(0.5).epsilon(1e-6));

  CHECK(time_to_reach(0.2, 0.2, 0.9) == 0.0);
  CHECK(time_to_reach(0.1, 0.2, 0.9) == 0.0);

  const double b_inf = 0.2 / 0.28;
  CHECK(time_to_reach(b_inf - 1e-3, 0.2, 0.9) < time_to_reach(b_inf - 1e-6, 0.2, 0.9));
  CHECK(time_to_reach(b_inf - 1e-9, 0.2, 0.9) > 50.0);
  CHECK_THROWS_AS(time_to_reach(b_inf, 0.2, 0.9), DomainError);
  CHECK_THROWS_AS(time_to_reach(0.9, 0.2, 0.9), DomainError);
  CHECK_THROWS_AS(time_to_reach(0.5, 0.0, 0.9), DomainError);
  CHECK_THROWS_AS(time_to_reach(1.2, 0.2, 0.9), DomainError);
}

TEST_CASE("seed for deadline on the (Gamma=0.8, alpha=0.7, T=15) query") {
  const SeedPlan plan = seed_for_deadline(0.7, 15.0, 0.8);
  const double bracket_low = 0.7 * 0.2 / (1.0 - 0.7 * 0.8);
  CHECK(bracket_low == doctest::Approx(0.31818).epsilon(1e-5));
  CHECK(plan.d0_star > bracket_low);
  CHECK(plan.d0_star < 1.0);
  CHECK(std::abs(active_at(15.0, plan.d0_star, 0.8) - 0.7) <= 1e-4);
  CHECK(std::abs(plan.residual) < 1e-10);
  CHECK(plan.iterations > 0);
}

TEST_CASE("property: returned seed satisfies the target") {
  for (double gamma : {0.1, 0.5, 0.8, 0.95, 1.0}) {
    for (double alpha : {0.05, 0.3, 0.6, 0.9}) {
      for (double deadline : {0.5, 2.0, 10.0, 40.0}) {
        const double eps = 1e-10;
        const SeedPlan plan = seed_for_deadline(alpha, deadline, gamma, eps);
        CAPTURE(gamma);
        CAPTURE(alpha);
        CAPTURE(deadline);
        CHECK(std::abs(active_at(deadline, plan.d0_star, gamma) - alpha) <= 10.0 * eps);
      }
    }
  }
}

TEST_CASE("property: round trip through time_to_reach") {
  for (int gi = 0; gi < 10; ++gi) {
    const double gamma = 0.05 + 0.09 * gi;
    for (int di = 0; di < 10; ++di) {
      const double d0 = 0.05 + 0.05 * di;
      const double b_inf = terminal_spread(gamma, d0);
      const double alpha = d0 + 0.5 * (b_inf - d0);
      if (!(alpha > d0 && alpha < b_inf)) continue;
      const double deadline = time_to_reach(alpha, d0, gamma);
      CAPTURE(gamma);
      CAPTURE(d0);
      CHECK(seed_for_deadline(alpha, deadline, gamma).d0_star == doctest::Approx(d0).epsilon(1e-6));
    }
  }
}

TEST_CASE("property: a(T; d0) increases with d0") {
  for (double gamma : {0.2, 0.8, 1.0}) {
    for (double deadline : {0.5, 5.0, 30.0}) {
      double prev = 0.0;
      for (double d0 = 0.01; d0 <= 1.0; d0 += 0.01) {
        const double a = active_at(deadline, d0, gamma);
        CHECK(a > prev);
        prev = a;
      }
    }
  }
}

TEST_CASE("deadline limits") {
  const double alpha = 0.6, gamma = 0.8;
  const double floor = alpha * (1.0 - gamma) / (1.0 - alpha * gamma);
  CHECK(seed_for_deadline(alpha, 500.0, gamma).d0_star == doctest::Approx(floor).epsilon(1e-8));
  CHECK(floor == doctest::Approx(required_seed(gamma, alpha)).epsilon(1e-14));
  CHECK(seed_for_deadline(alpha, 1e-7, gamma).d0_star == doctest::Approx(alpha).epsilon(1e-6));
  CHECK(seed_for_deadline(alpha, 0.0, gamma).d0_star == doctest::Approx(alpha).epsilon(1e-9));
}

TEST_CASE("no interaction means the seed is the target") {
  for (double deadline : {0.0, 1.0, 100.0}) CHECK(seed_for_deadline(0.4, deadline, 0.0).d0_star == 0.4);
}

TEST_CASE("invalid queries") {
  CHECK_THROWS_AS(seed_for_deadline(1.0, 5.0, 0.5), DomainError);
  CHECK_THROWS_AS(seed_for_deadline(0.0, 5.0, 0.5), DomainError);
  CHECK_THROWS_AS(seed_for_deadline(0.5, -1.0, 0.5), DomainError);
  CHECK_THROWS_AS(seed_for_deadline(0.5, 5.0, 1.5), DomainError);
  CHECK_THROWS_AS(seed_for_deadline(0.5, 5.0, 0.5, 0.0), DomainError);
}

TEST_CASE("sweep monotonicity and error cells") {
  const std::vector<double> gammas{0.0, 0.4, 0.8};
  const std::vector<double> alphas{0.2, 0.4, 0.6, 0.8};
  const std::vector<double> deadlines{1.0, 3.0, 10.0, 30.0};
  const auto cells = sweep(gammas, alphas, deadlines);
  REQUIRE(cells.size() == 48);
  auto at = [&](std::size_t g, std::size_t a, std::size_t t) -> const SweepCell& {
    return cells[(g * alphas.size() + a) * deadlines.size() + t];
  };
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (std::size_t t = 0; t < deadlines.size(); ++t) CHECK(at(0, a, t).plan->d0_star == alphas[a]);
  }
  for (std::size_t g = 1; g < gammas.size(); ++g) {
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      for (std::size_t t = 0; t < deadlines.size(); ++t) {
        REQUIRE(at(g, a, t).plan.has_value());
        if (t > 0) CHECK(at(g, a, t).plan->d0_star <= at(g, a, t - 1).plan->d0_star + 1e-12);
        if (a > 0) CHECK(at(g, a, t).plan->d0_star >= at(g, a - 1, t).plan->d0_star - 1e-12);
      }
    }
  }

  const auto bad = sweep({0.5}, {0.5, 1.5}, {2.0});
  REQUIRE(bad.size() == 2);
  CHECK(bad[0].plan.has_value());
  CHECK_FALSE(bad[1].plan.has_value());
  CHECK_FALSE(bad[1].error.empty());
}
