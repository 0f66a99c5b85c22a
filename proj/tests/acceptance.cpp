// Acceptance suite: one [PASS]/[FAIL] line per criterion.
//
//   acceptance            run every criterion
//   acceptance --only 4   run criterion 4 only
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hilt/convergence.hpp"
#include "hilt/discrete_oracle.hpp"
#include "hilt/fluid_ode.hpp"
#include "hilt/multiclass.hpp"
#include "hilt/planner.hpp"
#include "hilt/stochastic_sim.hpp"

using namespace hilt;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
    pass = pass && ok;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double sup_vs_closed_form(const Trajectory& traj, double gamma, double d0) {
  const UniformClosedForm form(gamma, d0);
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    const FluidState exact = form.at(s.time);
    worst = std::max({worst, std::abs(s.b - exact.b), std::abs(s.d - exact.d)});
  }
  return worst;
}

HiltConfig uniform_config(std::int64_t n, double gamma, double d0) {
  HiltConfig cfg;
  cfg.n = n;
  cfg.gamma_scale = gamma;
  cfg.d0 = d0;
  return cfg;
}

Verdict closed_form_agreement() {
  IntegratorOptions opts;
  opts.d_stop = 0.0;
  std::vector<std::pair<double, double>> configs{{0.9, 0.2}};
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> pick_gamma(0.0, 1.0), pick_d0(1e-3, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double gamma = pick_gamma(gen);
    configs.emplace_back(gamma, pick_d0(gen));
  }
  double worst = 0.0;
  for (const auto& [gamma, d0] : configs) {
    worst = std::max(worst, sup_vs_closed_form(integrate(ThresholdDistribution::uniform(), gamma, d0, 50.0, opts), gamma, d0));
  }
  Verdict v;
  v.require(worst <= 1e-6, "max sup-norm over 21 configs = " + num(worst) + " <= 1e-6");
  return v;
}

Verdict terminal_spread_check() {
  const double closed = terminal_spread(0.9, 0.2);
  const double integrated = integrate(ThresholdDistribution::uniform(), 0.9, 0.2, 100.0).final_active();
  Verdict v;
  v.require(std::abs(closed - 5.0 / 7.0) <= 1e-12, "|b_inf - 5/7| = " + num(std::abs(closed - 5.0 / 7.0)));
  v.require(std::abs(integrated - closed) <= 1e-6, "|integrate(t=100) - b_inf| = " + num(std::abs(integrated - closed)));
  return v;
}

Verdict recursion_limit() {
  Verdict v;
  const std::vector<std::int64_t> ns{300, 1000, 3000};
  for (double gamma : {0.5, 0.8, 0.9}) {
    const auto rows = limit_check(gamma, 0.2, ns);
    v.require(rows.back().rel_error < 0.01, "Gamma=" + num(gamma) + " rel err " + num(rows.back().rel_error) + " < 0.01");
    v.require(errors_decreasing(rows), "Gamma=" + num(gamma) + " decreasing in N");
  }
  const double n = 3000.0;
  const double h = expected_spread(3000, 1.0 / n, 600) / n;
  const double gap = std::abs(h - 1.0);
  v.require(gap > 0.05, "Gamma=1 gap |h/N - 1| = " + num(gap) + " > 0.05");
  return v;
}

Verdict fluid_convergence() {
  const auto rows = convergence_report(uniform_config(50, 0.9, 0.2), Route::Scaled, {50, 100, 500, 1000}, 20, 2024, 30.0);
  Verdict v;
  std::string seq;
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    seq += (i ? ", " : "") + num(rows[i].sup_dist);
    if (i > 0 && !(rows[i].sup_dist < rows[i - 1].sup_dist)) decreasing = false;
  }
  v.require(decreasing, "sup distances (N=50,100,500,1000) = " + seq + " decreasing");
  v.require(rows.back().sup_dist <= 0.02, "N=1000 distance <= 0.02");
  return v;
}

Verdict unscaled_agreement() {
  const HiltConfig cfg = uniform_config(1000, 0.9, 0.2);
  const Ensemble ens = ensemble(cfg, Route::Exact, 20, 7, 100000);
  const double t_end = ens.mean.back().time;
  const Trajectory ode = integrate(cfg.dist, cfg.gamma_scale, cfg.d0, std::max(t_end, 1.0));
  double worst = 0.0;
  for (const auto& s : ens.mean.samples) {
    const Sample o = ode.interpolate(s.time);
    worst = std::max({worst, std::abs(s.b - o.b), std::abs(s.d - o.d)});
  }
  Verdict v;
  v.require(worst <= 0.03, "exact chain (k = t) mean vs ODE sup-norm = " + num(worst) + " <= 0.03");
  return v;
}

Verdict sir_equivalence() {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> pick_lambda(0.1, 5.0), pick_gamma(0.0, 3.0), pick_d0(0.01, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double lambda = pick_lambda(gen);
    const double gamma = pick_gamma(gen);
    worst = std::max(worst, sir_comparator(lambda, gamma, pick_d0(gen), 30.0).sup_distance);
  }
  Verdict v;
  v.require(worst <= 1e-8, "max sup-norm over 10 configs = " + num(worst) + " <= 1e-8");
  return v;
}

Verdict planner_soundness() {
  Verdict v;
  const SeedPlan plan = seed_for_deadline(0.7, 15.0, 0.8);
  const double reached = active_at(15.0, plan.d0_star, 0.8);
  v.require(std::abs(reached - 0.7) <= 1e-4, "d0* = " + num(plan.d0_star) + ", |a(T) - 0.7| = " + num(std::abs(reached - 0.7)));
  v.require(plan.d0_star > 0.31818, "d0* > 0.31818");

  double worst = 0.0;
  int cells = 0;
  for (int gi = 0; gi < 10; ++gi) {
    const double gamma = 0.05 + 0.1 * gi;
    for (int di = 0; di < 10; ++di) {
      const double d0 = 0.05 + 0.09 * di;
      const double alpha = d0 + 0.5 * (terminal_spread(gamma, d0) - d0);
      if (!(alpha > d0)) continue;
      const double deadline = time_to_reach(alpha, d0, gamma);
      worst = std::max(worst, std::abs(seed_for_deadline(alpha, deadline, gamma).d0_star - d0));
      ++cells;
    }
  }
  v.require(worst <= 1e-6, "round trip over " + std::to_string(cells) + " grid cells, max error " + num(worst));
  return v;
}

Verdict hazard_effects() {
  Verdict v;
  const auto weibull = ThresholdDistribution::weibull(1.0, 5.0);
  const double small = integrate(weibull, 0.5, 0.2, 200.0).final_active();
  v.require(std::abs(small - 0.2) <= 1e-3, "(a) Weibull k=5 Gamma=0.5 terminal " + num(small) + " = d0 +- 1e-3");

  const Trajectory large = integrate(weibull, 5.0, 0.2, 30.0);
  const std::size_t modes = count_modes(large);
  v.require(modes >= 2, "(b) Weibull k=5 Gamma=5 d(t) has " + std::to_string(modes) + " maxima (non-unimodal)");

  auto spread = [](const ThresholdDistribution& dist, double gamma) {
    return integrate(dist, gamma, 0.2, 400.0).final_active();
  };
  const auto expo = ThresholdDistribution::exponential(2.0);
  const auto uni = ThresholdDistribution::uniform();
  const double e_small = spread(expo, 0.3), u_small = spread(uni, 0.3);
  const double e_large = spread(expo, 0.99), u_large = spread(uni, 0.99);
  v.require(e_small > u_small, "(c) Gamma=0.3: exp " + num(e_small) + " > uniform " + num(u_small));
  v.require(u_large > e_large, "Gamma=0.99: uniform " + num(u_large) + " > exp " + num(e_large));
  return v;
}

Verdict multiclass_allocation() {
  const auto expo = ThresholdDistribution::exponential(1.0);
  const CommunityNetwork net({0.7, 0.3}, {2.0, 0.1, 0.1, 2.0}, {expo, expo});
  Verdict v;
  const double smaller = integrate_multiclass(net, {0.0, 0.3}, 200.0).total_final();
  const double larger = integrate_multiclass(net, {0.3, 0.0}, 200.0).total_final();
  v.require(smaller > larger, "all-in-smaller " + num(smaller) + " > all-in-larger " + num(larger));
  const SeedAllocation best = optimize_seed(net, 0.3, 31);
  v.require(best.best.seeds[0] > 0.0 && best.best.seeds[1] > 0.0,
            "grid optimum (" + num(best.best.seeds[0]) + ", " + num(best.best.seeds[1]) + ") total " +
                num(best.best.total_spread) + " splits the budget");
  return v;
}

Verdict property_suites() {
  Verdict v;

  // Simplex preservation and monotone b on the fluid side.
  bool simplex = true, monotone = true;
  const std::vector<std::pair<ThresholdDistribution, double>> laws{
      {ThresholdDistribution::uniform(), 1.0},
      {ThresholdDistribution::exponential(2.0), 3.0},
      {ThresholdDistribution::weibull(1.0, 5.0), 5.0},
      {ThresholdDistribution::loglogistic(1.0, 4.0), 3.0}};
  for (const auto& [dist, gamma] : laws) {
    for (double d0 : {0.01, 0.3, 0.9}) {
      const Trajectory traj = integrate(dist, gamma, d0, 40.0);
      for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const Sample& s = traj.samples[i];
        simplex = simplex && s.b >= -1e-9 && s.d >= -1e-9 && s.b + s.d <= 1.0 + 1e-9;
        if (i > 0) monotone = monotone && s.b >= traj.samples[i - 1].b;
      }
    }
  }

  // Progressivity, absorption and determinism on the stochastic side.
  bool absorbing = true, deterministic = true;
  for (Route route : {Route::Exact, Route::Scaled}) {
    const HiltConfig cfg = uniform_config(300, 0.9, 0.1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Trajectory a = run_cascade(cfg, route, seed, 10000000);
      const Trajectory b = run_cascade(cfg, route, seed, 10000000);
      absorbing = absorbing && a.terminal && a.back().d == 0.0;
      deterministic = deterministic && a.samples.size() == b.samples.size();
      for (std::size_t i = 0; deterministic && i < a.samples.size(); ++i) {
        deterministic = a.samples[i].b == b.samples[i].b && a.samples[i].d == b.samples[i].d;
        if (i > 0) monotone = monotone && a.samples[i].b >= a.samples[i - 1].b;
        simplex = simplex && a.samples[i].b + a.samples[i].d <= 1.0;
      }
    }
    Rng rng(1);
    const StepOutcome stay = route == Route::Exact ? step_exact(CascadeState{40, 0, 3}, cfg, rng)
                                                   : step_scaled(CascadeState{40, 0, 3}, cfg, rng);
    absorbing = absorbing && stay.terminal && stay.state.exhausted == 40 && stay.state.infectious == 0;
  }

  // Hazard identity h (1 - F) = f.
  bool identity = true;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (const auto& dist : {ThresholdDistribution::uniform(), ThresholdDistribution::exponential(0.5),
                           ThresholdDistribution::weibull(1.0, 0.5), ThresholdDistribution::weibull(2.0, 5.0),
                           ThresholdDistribution::loglogistic(1.0, 3.0)}) {
    for (int i = 0; i < 1000; ++i) {
      const double x = dist.quantile(u(gen));
      if (x <= 0.0 || dist.cdf(x) > 1.0 - 1e-6) continue;
      const double f = dist.pdf(x);
      identity = identity && std::abs(dist.hazard(x) * (1.0 - dist.cdf(x)) - f) <= 1e-8 * std::max(1.0, f);
    }
  }

  // Recursion against exact-chain Monte Carlo.
  std::string mc_detail;
  bool mc_ok = true;
  for (std::int64_t n : {50, 200}) {
    const HiltConfig cfg = uniform_config(n, 0.9, 0.2);
    const Ensemble ens = ensemble(cfg, Route::Exact, 10000, 99, 1000000);
    double sum = 0.0, sq = 0.0;
    for (const auto& run : ens.runs) {
      const double x = run.final_active() * static_cast<double>(n);
      sum += x;
      sq += x * x;
    }
    const double runs = static_cast<double>(ens.runs.size());
    const double mean = sum / runs;
    const double se = std::sqrt((sq - runs * mean * mean) / (runs - 1.0) / runs);
    const double oracle = expected_spread(n, 0.9 / static_cast<double>(n), cfg.initial_infectious());
    const double z = std::abs(mean - oracle) / se;
    mc_ok = mc_ok && z <= 3.0;
    mc_detail += (mc_detail.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + " z=" + num(z);
  }

  v.require(simplex, "simplex");
  v.require(monotone, "monotone b");
  v.require(absorbing, "absorption");
  v.require(deterministic, "determinism");
  v.require(identity, "hazard identity");
  v.require(mc_ok, "recursion vs Monte Carlo (" + mc_detail + ")");
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "closed-form agreement", 1.0, closed_form_agreement},
      {2, "terminal spread", 1.0, terminal_spread_check},
      {3, "recursion limit", 1.0, recursion_limit},
      {4, "fluid-limit convergence", 30.0, fluid_convergence},
      {5, "unscaled-process agreement", 10.0, unscaled_agreement},
      {6, "SIR equivalence", 1.0, sir_equivalence},
      {7, "planner soundness", 1.0, planner_soundness},
      {8, "hazard effects", 5.0, hazard_effects},
      {9, "multiclass allocation", 30.0, multiclass_allocation},
      {10, "property suites", 60.0, property_suites},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = v.pass && in_time;
    all = all && pass;
    std::printf("[%s] %d %s: %s; runtime %.2f s (< %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs, c.budget_s, in_time ? "" : " exceeded");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
