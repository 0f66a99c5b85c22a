#include "hilt/planner.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hilt/errors.hpp"
#include "hilt/fluid_ode.hpp"

namespace hilt {
namespace {

constexpr double kBracketFloor = 1e-12;
constexpr std::size_t kMaxIterations = 10000;

void check_common(double alpha, double gamma_scale) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("target fraction alpha must lie in (0, 1)");
  if (!(gamma_scale >= 0.0 && gamma_scale <= 1.0)) throw DomainError("planning requires Gamma in [0, 1]");
}

// F(d0) - G(d0) for the deadline equation e^{-rT} = (1 - (alpha/d0) r) / (1 - r).
double deadline_gap(double alpha, double deadline, double gamma_scale, double d0) {
  const double r = 1.0 - gamma_scale + gamma_scale * d0;
  const double one_minus_r = gamma_scale * (1.0 - d0);
  // alpha r / d0 = alpha (1 - Gamma) / d0 + alpha Gamma, finite at d0 = 0 when Gamma = 1.
  const double ratio = (gamma_scale == 1.0 ? 0.0 : alpha * (1.0 - gamma_scale) / d0) + alpha * gamma_scale;
  const double numerator = 1.0 - ratio;
  if (!(one_minus_r > 0.0)) {
    return numerator > 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  }
  return std::exp(-r * deadline) - numerator / one_minus_r;
}

}  // namespace

double time_to_reach(double alpha, double d0, double gamma_scale) {
  check_common(alpha, gamma_scale);
  if (!(d0 > 0.0 && d0 <= 1.0)) throw DomainError("seed d0 must lie in (0, 1]");
  if (alpha <= d0) return 0.0;
  const double r = 1.0 - gamma_scale + gamma_scale * d0;
  const double reachable = d0 / r;
  if (alpha >= reachable) {
    std::ostringstream os;
    os << "target alpha = " << alpha << " is unreachable: terminal spread for d0 = " << d0
       << " is " << reachable;
    throw DomainError(os.str());
  }
  return std::log((1.0 - r) / (1.0 - (alpha / d0) * r)) / r;
}

double active_at(double deadline, double d0, double gamma_scale) {
  return UniformClosedForm(gamma_scale, d0).active(deadline);
}

SeedPlan seed_for_deadline(double alpha, double deadline, double gamma_scale, double eps) {
  check_common(alpha, gamma_scale);
  if (!(deadline >= 0.0) || !std::isfinite(deadline)) throw DomainError("deadline T must be finite and >= 0");
  if (!(eps > 0.0)) throw DomainError("tolerance eps must be positive");

  // Without interaction a(T) = d0 for every T.
  if (gamma_scale == 0.0) return SeedPlan{alpha, 0, 0.0};

  if (active_at(deadline, 1.0, gamma_scale) < alpha) {
    throw DomainError("target alpha is unreachable by the deadline even with d0 = 1");
  }

  double lo = alpha * (1.0 - gamma_scale) / (1.0 - alpha * gamma_scale);
  double hi = 1.0;
  // Above the root a(T) overshoots (F < G), below it falls short (F > G).
  if (deadline_gap(alpha, deadline, gamma_scale, lo) < -1e-12 || !(deadline_gap(alpha, deadline, gamma_scale, hi) < 0.0)) {
    std::ostringstream os;
    os << "inconsistent planning query (alpha = " << alpha << ", T = " << deadline << ", Gamma = " << gamma_scale
       << "): bracket endpoints do not straddle the root";
    throw DomainError(os.str());
  }

  SeedPlan plan;
  double x = lo;
  double gap = 0.0;
  for (;;) {
    x = 0.5 * (lo + hi);
    gap = deadline_gap(alpha, deadline, gamma_scale, x);
    ++plan.iterations;
    if (gap > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (std::abs(gap) < eps || hi - lo < kBracketFloor) break;
    if (plan.iterations >= kMaxIterations) {
      throw NumericalError("bisection exceeded the iteration cap");
    }
  }
  plan.d0_star = x;
  plan.residual = gap;
  return plan;
}

std::vector<SweepCell> sweep(const std::vector<double>& gammas, const std::vector<double>& alphas,
                             const std::vector<double>& deadlines, double eps) {
  std::vector<SweepCell> cells;
  cells.reserve(gammas.size() * alphas.size() * deadlines.size());
  for (double g : gammas) {
    for (double a : alphas) {
      for (double t : deadlines) {
        SweepCell cell{g, a, t, std::nullopt, {}};
        try {
          cell.plan = seed_for_deadline(a, t, g, eps);
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace hilt
