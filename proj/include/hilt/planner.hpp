#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hilt {

/// Fluid time needed for a uniform-threshold cascade seeded with d0 to have
/// an active fraction a(T) = b(T) + d(T) of alpha:
///   T = (1/r) ln((1 - r) / (1 - (alpha/d0) r)),   r = 1 - Gamma + Gamma d0.
/// Returns 0 for alpha <= d0. Throws DomainError when alpha >= d0 / r.
double time_to_reach(double alpha, double d0, double gamma_scale);

/// a(T; d0) under the uniform closed form.
double active_at(double deadline, double d0, double gamma_scale);

struct SeedPlan {
  double d0_star = 0.0;
  std::size_t iterations = 0;
  /// F(d0*) - G(d0*) at the returned point.
  double residual = 0.0;
};

/// Smallest seed d0* with a(T; d0*) = alpha, found by bisecting
/// F(d0) = e^{-rT} against G(d0) = (1 - (alpha/d0) r) / (1 - r) on
/// [alpha (1 - Gamma) / (1 - alpha Gamma), 1]. Stops when |F - G| < eps or
/// the bracket is narrower than 1e-12.
SeedPlan seed_for_deadline(double alpha, double deadline, double gamma_scale, double eps = 1e-10);

struct SweepCell {
  double gamma_scale = 0.0;
  double alpha = 0.0;
  double deadline = 0.0;
  std::optional<SeedPlan> plan;
  std::string error;
};

/// seed_for_deadline over the Cartesian product of the three grids, in
/// gamma-major order. Failing cells keep their message and the sweep goes on.
std::vector<SweepCell> sweep(const std::vector<double>& gammas, const std::vector<double>& alphas,
                             const std::vector<double>& deadlines, double eps = 1e-10);

}  // namespace hilt
