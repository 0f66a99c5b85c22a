#include "hilt/fluid_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hilt/errors.hpp"

namespace hilt {
namespace {

void check_fluid_inputs(const ThresholdDistribution& dist, double gamma_scale, double d0, double t_end) {
  std::ostringstream os;
  if (!(gamma_scale >= 0.0) || !std::isfinite(gamma_scale)) {
    os << "Gamma must be finite and >= 0, got " << gamma_scale;
  } else if (!(d0 > 0.0 && d0 <= 1.0)) {
    os << "d0 must lie in (0, 1], got " << d0;
  } else if (dist.is_uniform() && gamma_scale > 1.0) {
    os << "uniform thresholds require Gamma <= 1, got " << gamma_scale;
  } else if (!(t_end > 0.0)) {
    os << "t_end must be positive, got " << t_end;
  } else {
    return;
  }
  throw DomainError(os.str());
}

void check_uniform_inputs(double gamma_scale, double d0) {
  if (!(gamma_scale >= 0.0 && gamma_scale <= 1.0)) {
    throw DomainError("uniform closed form requires Gamma in [0, 1]");
  }
  if (!(d0 > 0.0 && d0 <= 1.0)) throw DomainError("uniform closed form requires d0 in (0, 1]");
}

void check_simplex(double t, double b, double d, double tol) {
  if (b < -tol || d < -tol || b + d > 1.0 + tol || !std::isfinite(b) || !std::isfinite(d)) {
    std::ostringstream os;
    os << "state left the simplex at t = " << t << " (b = " << b << ", d = " << d
       << "); reduce the integrator step";
    throw NumericalError(os.str());
  }
}

// Record a sample every `stride` steps, plus the final one.
class Recorder {
 public:
  Recorder(Trajectory& traj, std::size_t stride) : traj_(traj), stride_(std::max<std::size_t>(1, stride)) {}

  void push(double t, double b, double d, bool force) {
    ++count_;
    if (force || count_ % stride_ == 0) {
      traj_.samples.push_back(Sample{t, b, d});
      pending_ = false;
    } else {
      pending_ = true;
      last_ = Sample{t, b, d};
    }
  }
  void flush() {
    if (pending_) traj_.samples.push_back(last_);
    pending_ = false;
  }

 private:
  Trajectory& traj_;
  std::size_t stride_;
  std::size_t count_ = 0;
  bool pending_ = false;
  Sample last_{};
};

}  // namespace

FluidState fluid_rhs(const ThresholdDistribution& dist, double gamma_scale, double b, double d, double eps_haz) {
  const double inactive = 1.0 - b - d;
  const double drive = gamma_scale == 0.0 ? 0.0 : dist.hazard_regularized(gamma_scale * b, eps_haz) * gamma_scale;
  return FluidState{0.0, d, drive * d * inactive - d};
}

Trajectory integrate(const ThresholdDistribution& dist, double gamma_scale, double d0, double t_end,
                     const IntegratorOptions& opts) {
  check_fluid_inputs(dist, gamma_scale, d0, t_end);
  if (!(opts.step > 0.0)) throw DomainError("integrator step must be positive");

  Trajectory traj;
  traj.route = Route::Ode;
  traj.samples.push_back(Sample{0.0, 0.0, d0});
  Recorder rec(traj, opts.record_stride);

  auto rhs = [&](const std::vector<double>& y) {
    const FluidState dy = fluid_rhs(dist, gamma_scale, y[0], y[1], opts.eps_haz);
    return std::vector<double>{dy.b, dy.d};
  };
  detail::rk4_drive(rhs, {0.0, d0}, t_end, opts, [&](double t, const std::vector<double>& y) {
    check_simplex(t, y[0], y[1], opts.simplex_tol);
    const bool done = opts.d_stop > 0.0 && y[1] < opts.d_stop;
    rec.push(t, y[0], y[1], done);
    if (done) traj.terminal = true;
    return !done;
  });
  rec.flush();
  return traj;
}

UniformClosedForm::UniformClosedForm(double gamma_scale_in, double d0_in) : d0(d0_in), gamma_scale(gamma_scale_in) {
  check_uniform_inputs(gamma_scale, d0);
}

FluidState UniformClosedForm::at(double t) const {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  const double r = rate();
  const double decay = std::exp(-r * t);
  // (1 - e^{-rt}) / r computed as -expm1(-rt) / r keeps precision for small rt.
  return FluidState{t, d0 * (-std::expm1(-r * t)) / r, d0 * decay};
}

double UniformClosedForm::active(double t) const {
  const double r = rate();
  return d0 * (1.0 / r - (1.0 / r - 1.0) * std::exp(-r * t));
}

FluidState uniform_closed_form(double gamma_scale, double d0, double t) {
  return UniformClosedForm(gamma_scale, d0).at(t);
}

Trajectory uniform_closed_form_trajectory(double gamma_scale, double d0, double t_end, double dt) {
  const UniformClosedForm form(gamma_scale, d0);
  if (!(t_end > 0.0) || !(dt > 0.0)) throw DomainError("closed-form grid needs t_end > 0 and dt > 0");
  Trajectory traj;
  traj.route = Route::ClosedForm;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = std::min(static_cast<double>(k) * dt, t_end);
    const FluidState s = form.at(t);
    traj.samples.push_back(Sample{t, s.b, s.d});
  }
  traj.terminal = false;
  return traj;
}

double terminal_spread(double gamma_scale, double d0) {
  check_uniform_inputs(gamma_scale, d0);
  return d0 / (1.0 - gamma_scale + gamma_scale * d0);
}

double required_seed(double gamma_scale, double b_inf) {
  if (!(gamma_scale >= 0.0 && gamma_scale <= 1.0)) throw DomainError("required_seed requires Gamma in [0, 1]");
  if (!(b_inf > 0.0 && b_inf <= 1.0)) throw DomainError("target terminal spread must lie in (0, 1]");
  if (gamma_scale == 1.0) {
    if (b_inf < 1.0) {
      throw DomainError("with Gamma = 1 every seed d0 > 0 reaches b_inf = 1; no seed gives b_inf < 1");
    }
    throw DomainError("with Gamma = 1 any seed d0 > 0 reaches b_inf = 1; the seed is not unique");
  }
  return b_inf * (1.0 - gamma_scale) / (1.0 - b_inf * gamma_scale);
}

Trajectory integrate_sir(double beta, double d0, double t_end, const IntegratorOptions& opts) {
  if (!(beta >= 0.0)) throw DomainError("SIR infection rate must be >= 0");
  if (!(d0 > 0.0 && d0 <= 1.0)) throw DomainError("d0 must lie in (0, 1]");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");

  Trajectory traj;
  traj.route = Route::Ode;
  traj.samples.push_back(Sample{0.0, 0.0, d0});
  Recorder rec(traj, opts.record_stride);

  // y = (s, i, r)
  auto rhs = [beta](const std::vector<double>& y) {
    const double infection = beta * y[0] * y[1];
    return std::vector<double>{-infection, infection - y[1], y[1]};
  };
  detail::rk4_drive(rhs, {1.0 - d0, d0, 0.0}, t_end, opts, [&](double t, const std::vector<double>& y) {
    const bool done = opts.d_stop > 0.0 && y[1] < opts.d_stop;
    rec.push(t, y[2], y[1], done);
    if (done) traj.terminal = true;
    return !done;
  });
  rec.flush();
  return traj;
}

SirComparison sir_comparator(double lambda, double gamma_scale, double d0, double t_end, IntegratorOptions opts) {
  if (!(lambda > 0.0)) throw DomainError("exponential rate lambda must be > 0");
  opts.d_stop = 0.0;
  opts.adaptive = false;
  SirComparison out;
  out.hilt = integrate(ThresholdDistribution::exponential(lambda), gamma_scale, d0, t_end, opts);
  out.sir = integrate_sir(lambda * gamma_scale, d0, t_end, opts);
  out.sup_distance = sup_distance_aligned(out.hilt, out.sir);
  return out;
}

FixedPointResult granovetter_fixed_point(const ThresholdDistribution& dist, double r0, std::size_t max_iter,
                                         double tol) {
  if (!(r0 >= 0.0 && r0 <= 1.0)) throw DomainError("r0 must lie in [0, 1]");
  double r = r0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const double next = dist.cdf(r);
    if (std::abs(next - r) < tol) return FixedPointResult{next, k};
    r = next;
  }
  std::ostringstream os;
  os << "fixed-point iteration did not converge in " << max_iter << " iterations (last iterate " << r << ")";
  throw ConvergenceError(os.str(), r);
}

namespace {

struct Point {
  double time;
  double value;
};

// d series with runs of equal values collapsed to their first point.
std::vector<Point> collapse_plateaus(const Trajectory& traj) {
  std::vector<Point> pts;
  for (const auto& s : traj.samples) {
    if (pts.empty() || s.d != pts.back().value) pts.push_back(Point{s.time, s.d});
  }
  return pts;
}

// Height of pts[i] above the higher of the lowest points separating it from
// a strictly higher point on each side (or from the series ends).
double prominence_of(const std::vector<Point>& pts, std::size_t i) {
  const double peak = pts[i].value;
  double left_min = peak;
  for (std::size_t j = i; j-- > 0;) {
    if (pts[j].value > peak) break;
    left_min = std::min(left_min, pts[j].value);
  }
  double right_min = peak;
  for (std::size_t j = i + 1; j < pts.size(); ++j) {
    if (pts[j].value > peak) break;
    right_min = std::min(right_min, pts[j].value);
  }
  if (i == 0) return peak - right_min;
  return peak - std::max(left_min, right_min);
}

}  // namespace

std::vector<double> detect_modes(const Trajectory& traj, double prominence) {
  if (traj.samples.size() < 3) throw DomainError("mode detection needs at least three samples");
  const std::vector<Point> pts = collapse_plateaus(traj);
  std::vector<double> modes;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (pts[i].value > pts[i - 1].value && pts[i].value > pts[i + 1].value && prominence_of(pts, i) >= prominence) {
      modes.push_back(pts[i].time);
    }
  }
  return modes;
}

std::size_t count_modes(const Trajectory& traj, double prominence) {
  const std::size_t interior = detect_modes(traj, prominence).size();
  const std::vector<Point> pts = collapse_plateaus(traj);
  const bool boundary = pts.size() >= 2 && pts[1].value < pts[0].value && prominence_of(pts, 0) >= prominence;
  return interior + (boundary ? 1 : 0);
}

}  // namespace hilt
