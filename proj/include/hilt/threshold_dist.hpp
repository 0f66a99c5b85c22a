#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>

namespace hilt {

/// Threshold law of a node. Support is x >= 0 for every built-in law; the
/// uniform law lives on [0, 1]. Parameters are validated on construction and
/// the object is immutable afterwards, so concurrent evaluation is safe.
///
/// The quantity that enters the fluid dynamics is the hazard
///   h(x) = f(x) / (1 - F(x)),
/// the activation propensity of a node that has already resisted influence x.
class ThresholdDistribution {
 public:
  struct Uniform01 {};
  struct Exponential {
    double rate;
  };
  struct Weibull {
    double scale;
    double shape;
  };
  struct LogLogistic {
    double scale;
    double shape;
  };
  struct Custom {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;  // optional, may be empty
    double support_upper = std::numeric_limits<double>::infinity();
    std::string label = "custom";
  };

  using Kind = std::variant<Uniform01, Exponential, Weibull, LogLogistic, Custom>;

  static ThresholdDistribution uniform();
  static ThresholdDistribution exponential(double rate);
  static ThresholdDistribution weibull(double scale, double shape);
  static ThresholdDistribution loglogistic(double scale, double shape);
  /// Hazard is derived from the supplied pdf/cdf, never supplied directly.
  static ThresholdDistribution custom(Custom spec);

  const Kind& kind() const noexcept { return kind_; }
  bool is_uniform() const noexcept { return std::holds_alternative<Uniform01>(kind_); }

  /// 1 for the uniform law, +inf for the other built-ins.
  double support_upper() const noexcept;

  double pdf(double x) const;
  double cdf(double x) const;

  /// Raw hazard. Throws SingularityError where F(x) = 1 or h diverges
  /// (x = 0 for Weibull/log-logistic with shape < 1).
  double hazard(double x) const;

  /// Hazard evaluated at x clamped to [eps, support_upper - eps]; total.
  double hazard_regularized(double x, double eps_haz) const;

  /// Inverse cdf for u in [0, 1). Custom laws need an explicit quantile.
  double quantile(double u) const;

  double mean() const;

  /// Short name used in configs and JSON echoes: uniform, exponential, ...
  std::string name() const;
  /// Parameter echo, e.g. "weibull(scale=1, shape=5)".
  std::string describe() const;

 private:
  explicit ThresholdDistribution(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

}  // namespace hilt
