#include "hilt/threshold_dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hilt/errors.hpp"

namespace hilt {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << what << " must be finite and strictly positive, got " << value;
    throw DomainError(os.str());
  }
}

void require_nonnegative_x(double x) {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "threshold argument must be >= 0, got " << x;
    throw DomainError(os.str());
  }
}

}  // namespace

ThresholdDistribution ThresholdDistribution::uniform() { return ThresholdDistribution(Uniform01{}); }

ThresholdDistribution ThresholdDistribution::exponential(double rate) {
  require_positive(rate, "exponential rate");
  return ThresholdDistribution(Exponential{rate});
}

ThresholdDistribution ThresholdDistribution::weibull(double scale, double shape) {
  require_positive(scale, "weibull scale");
  require_positive(shape, "weibull shape");
  return ThresholdDistribution(Weibull{scale, shape});
}

ThresholdDistribution ThresholdDistribution::loglogistic(double scale, double shape) {
  require_positive(scale, "loglogistic scale");
  require_positive(shape, "loglogistic shape");
  return ThresholdDistribution(LogLogistic{scale, shape});
}

ThresholdDistribution ThresholdDistribution::custom(Custom spec) {
  if (!spec.pdf || !spec.cdf) {
    throw DomainError("custom distribution requires both pdf and cdf");
  }
  if (!(spec.support_upper > 0.0)) {
    throw DomainError("custom distribution support_upper must be > 0");
  }
  if (std::abs(spec.cdf(0.0)) > 1e-12) {
    throw DomainError("custom distribution must satisfy F(0) = 0");
  }
  return ThresholdDistribution(std::move(spec));
}

double ThresholdDistribution::support_upper() const noexcept {
  return std::visit(Overloaded{[](const Uniform01&) { return 1.0; },
                               [](const Custom& c) { return c.support_upper; },
                               [](const auto&) { return std::numeric_limits<double>::infinity(); }},
                    kind_);
}

double ThresholdDistribution::pdf(double x) const {
  require_nonnegative_x(x);
  return std::visit(
      Overloaded{
          [x](const Uniform01&) { return x <= 1.0 ? 1.0 : 0.0; },
          [x](const Exponential& e) { return e.rate * std::exp(-e.rate * x); },
          [x](const Weibull& w) {
            const double z = x / w.scale;
            if (x == 0.0) {
              if (w.shape < 1.0) return std::numeric_limits<double>::infinity();
              return w.shape == 1.0 ? 1.0 / w.scale : 0.0;
            }
            return (w.shape / w.scale) * std::pow(z, w.shape - 1.0) * std::exp(-std::pow(z, w.shape));
          },
          [x](const LogLogistic& l) {
            const double z = x / l.scale;
            if (x == 0.0) {
              if (l.shape < 1.0) return std::numeric_limits<double>::infinity();
              return l.shape == 1.0 ? 1.0 / l.scale : 0.0;
            }
            const double zb = std::pow(z, l.shape);
            const double denom = 1.0 + zb;
            return (l.shape / l.scale) * std::pow(z, l.shape - 1.0) / (denom * denom);
          },
          [x](const Custom& c) { return c.pdf(x); }},
      kind_);
}

double ThresholdDistribution::cdf(double x) const {
  require_nonnegative_x(x);
  return std::visit(Overloaded{[x](const Uniform01&) { return std::min(x, 1.0); },
                               [x](const Exponential& e) { return -std::expm1(-e.rate * x); },
                               [x](const Weibull& w) { return -std::expm1(-std::pow(x / w.scale, w.shape)); },
                               [x](const LogLogistic& l) {
                                 const double zb = std::pow(x / l.scale, l.shape);
                                 return zb / (1.0 + zb);
                               },
                               [x](const Custom& c) { return std::clamp(c.cdf(x), 0.0, 1.0); }},
                    kind_);
}

double ThresholdDistribution::hazard(double x) const {
  require_nonnegative_x(x);
  auto singular = [this, x]() {
    std::ostringstream os;
    os << "hazard of " << describe() << " is singular at x = " << x;
    return SingularityError(os.str());
  };
  return std::visit(
      Overloaded{[&](const Uniform01&) {
                   if (x >= 1.0) throw singular();
                   return 1.0 / (1.0 - x);
                 },
                 [](const Exponential& e) { return e.rate; },
                 [&](const Weibull& w) {
                   if (x == 0.0) {
                     if (w.shape < 1.0) throw singular();
                     return w.shape == 1.0 ? 1.0 / w.scale : 0.0;
                   }
                   return (w.shape / w.scale) * std::pow(x / w.scale, w.shape - 1.0);
                 },
                 [&](const LogLogistic& l) {
                   if (x == 0.0) {
                     if (l.shape < 1.0) throw singular();
                     return l.shape == 1.0 ? 1.0 / l.scale : 0.0;
                   }
                   const double z = x / l.scale;
                   return (l.shape / l.scale) * std::pow(z, l.shape - 1.0) / (1.0 + std::pow(z, l.shape));
                 },
                 [&](const Custom& c) {
                   const double survival = 1.0 - std::clamp(c.cdf(x), 0.0, 1.0);
                   if (!(survival > 0.0) || x >= c.support_upper) throw singular();
                   const double h = c.pdf(x) / survival;
                   if (!std::isfinite(h)) throw singular();
                   return h;
                 }},
      kind_);
}

double ThresholdDistribution::hazard_regularized(double x, double eps_haz) const {
  double lo = eps_haz;
  double hi = support_upper();
  if (std::isfinite(hi)) hi -= eps_haz;
  const double clamped = std::clamp(x, lo, std::max(lo, hi));
  if (const auto* c = std::get_if<Custom>(&kind_)) {
    // F may reach 1 before support_upper; such points carry no inactive mass.
    const double survival = 1.0 - std::clamp(c->cdf(clamped), 0.0, 1.0);
    if (!(survival > 0.0)) return 1.0 / eps_haz;
  }
  return hazard(clamped);
}

double ThresholdDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw DomainError("quantile argument must lie in [0, 1)");
  }
  return std::visit(
      Overloaded{[u](const Uniform01&) { return u; },
                 [u](const Exponential& e) { return -std::log1p(-u) / e.rate; },
                 [u](const Weibull& w) { return w.scale * std::pow(-std::log1p(-u), 1.0 / w.shape); },
                 [u](const LogLogistic& l) { return l.scale * std::pow(u / (1.0 - u), 1.0 / l.shape); },
                 [u](const Custom& c) {
                   if (!c.quantile) throw DomainError("custom distribution has no quantile function");
                   return c.quantile(u);
                 }},
      kind_);
}

double ThresholdDistribution::mean() const {
  return std::visit(Overloaded{[](const Uniform01&) { return 0.5; },
                               [](const Exponential& e) { return 1.0 / e.rate; },
                               [](const Weibull& w) { return w.scale * std::tgamma(1.0 + 1.0 / w.shape); },
                               [](const LogLogistic& l) {
                                 if (l.shape <= 1.0) return std::numeric_limits<double>::infinity();
                                 const double a = M_PI / l.shape;
                                 return l.scale * a / std::sin(a);
                               },
                               [](const Custom&) -> double {
                                 throw DomainError("mean is not available for custom distributions");
                               }},
                    kind_);
}

std::string ThresholdDistribution::name() const {
  return std::visit(Overloaded{[](const Uniform01&) { return std::string("uniform"); },
                               [](const Exponential&) { return std::string("exponential"); },
                               [](const Weibull&) { return std::string("weibull"); },
                               [](const LogLogistic&) { return std::string("loglogistic"); },
                               [](const Custom& c) { return c.label; }},
                    kind_);
}

std::string ThresholdDistribution::describe() const {
  std::ostringstream os;
  os << name();
  std::visit(Overloaded{[](const Uniform01&) {},
                        [&os](const Exponential& e) { os << "(rate=" << e.rate << ")"; },
                        [&os](const Weibull& w) { os << "(scale=" << w.scale << ", shape=" << w.shape << ")"; },
                        [&os](const LogLogistic& l) { os << "(scale=" << l.scale << ", shape=" << l.shape << ")"; },
                        [](const Custom&) {}},
             kind_);
  return os.str();
}

}  // namespace hilt
