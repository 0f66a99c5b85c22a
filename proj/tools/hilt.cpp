// hilt: command-line front end for the threshold-cascade library.
//
// Exit codes: 0 ok, 2 usage, 3 domain error, 4 numerical failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hilt/cli/commands.hpp"
#include "hilt/cli/config.hpp"
#include "hilt/errors.hpp"

namespace {

using hilt::cli::Config;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

// Flags shared by every subcommand.
struct Common {
  std::string config_path;
  std::string output;
  std::string format = "csv";
  Config config;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value config file; flags override its entries")
        ->check(CLI::ExistingFile);
    app->add_option("-o,--output", output, "write the dataset here instead of stdout");
    app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }
  void load() {
    if (!config_path.empty()) config = Config::load(config_path);
  }
};

template <class T>
T pick(const std::optional<T>& flag, const Config& cfg, const std::string& key, T fallback) {
  if (flag) return *flag;
  if constexpr (std::is_integral_v<T>) {
    if (auto v = cfg.get_int(key)) return static_cast<T>(*v);
  } else {
    if (auto v = cfg.get_double(key)) return static_cast<T>(*v);
  }
  return fallback;
}

std::string pick_string(const std::optional<std::string>& flag, const Config& cfg, const std::string& key,
                        std::string fallback) {
  if (flag) return *flag;
  if (auto v = cfg.get(key)) return *v;
  return fallback;
}

std::string exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct DistFlags {
  std::optional<std::string> dist;
  std::optional<double> rate;
  std::optional<double> scale;
  std::optional<double> shape;

  void attach(CLI::App* app) {
    app->add_option("--dist", dist, "uniform | exponential | weibull | loglogistic");
    app->add_option("--rate,--lambda", rate, "exponential rate");
    app->add_option("--scale", scale, "weibull/loglogistic scale");
    app->add_option("--shape", shape, "weibull/loglogistic shape");
  }
  hilt::ThresholdDistribution resolve(const Config& cfg) const {
    Config::Section entries = cfg.global;
    if (dist) entries["dist"] = *dist;
    if (rate) entries["rate"] = exact(*rate);
    if (scale) entries["scale"] = exact(*scale);
    if (shape) entries["shape"] = exact(*shape);
    if (rate) entries.erase("lambda");
    return hilt::cli::parse_distribution(entries);
  }
};

struct IntegratorFlags {
  std::optional<double> step;
  std::optional<double> d_stop;
  std::optional<double> eps_haz;
  std::optional<std::size_t> stride;
  bool adaptive = false;

  void attach(CLI::App* app) {
    app->add_option("--step", step, "integrator step (default 1e-3)")->check(CLI::PositiveNumber);
    app->add_option("--d-stop", d_stop, "terminal threshold on d (default 1e-10)");
    app->add_option("--eps-haz", eps_haz, "hazard clamp (default 1e-12)")->check(CLI::PositiveNumber);
    app->add_option("--stride", stride, "keep every k-th step in the output")->check(CLI::PositiveNumber);
    app->add_flag("--adaptive", adaptive, "step doubling with error control");
  }
  hilt::IntegratorOptions resolve(const Config& cfg) const {
    hilt::IntegratorOptions o;
    o.step = pick(step, cfg, "step", o.step);
    o.d_stop = pick(d_stop, cfg, "d_stop", o.d_stop);
    o.eps_haz = pick(eps_haz, cfg, "eps_haz", o.eps_haz);
    o.record_stride = pick(stride, cfg, "stride", o.record_stride);
    o.adaptive = adaptive;
    return o;
  }
};

std::vector<std::int64_t> to_ints(const std::vector<double>& xs) {
  std::vector<std::int64_t> out;
  for (double x : xs) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

void emit(const hilt::cli::Output& out, const Common& common) {
  if (common.output.empty()) {
    std::cout << out.body;
    std::cerr << out.summary << "\n";
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw hilt::DomainError("cannot write to '" + common.output + "'");
  file << out.body;
  std::cout << out.summary << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-model influence cascades: simulation, fluid limits, planning"};
  app.require_subcommand(1);

  // ode
  Common ode_common;
  DistFlags ode_dist;
  IntegratorFlags ode_int;
  std::optional<double> ode_gamma, ode_d0, ode_tend;
  bool ode_closed = false;
  auto* ode = app.add_subcommand("ode", "integrate the fluid limit");
  ode_common.attach(ode);
  ode_dist.attach(ode);
  ode_int.attach(ode);
  ode->add_option("--gamma", ode_gamma, "influence scale Gamma");
  ode->add_option("--d0", ode_d0, "initial infectious fraction");
  ode->add_option("--t-end", ode_tend, "final fluid time");
  ode->add_flag("--closed-form", ode_closed, "evaluate the uniform closed form instead of integrating");

  // simulate
  Common sim_common;
  DistFlags sim_dist;
  std::optional<std::int64_t> sim_n, sim_max_steps;
  std::optional<double> sim_gamma, sim_d0;
  std::optional<std::string> sim_route;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::size_t> sim_runs;
  auto* sim = app.add_subcommand("simulate", "stochastic cascade (exact chain or minislot-scaled chain)");
  sim_common.attach(sim);
  sim_dist.attach(sim);
  sim->add_option("--n", sim_n, "population size N")->check(CLI::PositiveNumber);
  sim->add_option("--gamma", sim_gamma, "influence scale Gamma");
  sim->add_option("--d0", sim_d0, "initial infectious fraction");
  sim->add_option("--route", sim_route, "exact or scaled")->check(CLI::IsMember({"exact", "scaled"}));
  sim->add_option("--seed", sim_seed, "base seed");
  sim->add_option("--runs", sim_runs, "number of replications")->check(CLI::PositiveNumber);
  sim->add_option("--max-steps", sim_max_steps, "step cap per run")->check(CLI::PositiveNumber);

  // expected
  Common exp_common;
  std::optional<std::int64_t> exp_n, exp_stride;
  std::optional<double> exp_gamma, exp_d0;
  std::vector<double> exp_limit;
  auto* expct = app.add_subcommand("expected", "expected terminal spread of the uniform-threshold chain");
  exp_common.attach(expct);
  expct->add_option("--n", exp_n, "population size N")->check(CLI::PositiveNumber);
  expct->add_option("--gamma", exp_gamma, "influence scale Gamma (edge weight Gamma / N)");
  expct->add_option("--m-stride", exp_stride, "emit every k-th seed size")->check(CLI::PositiveNumber);
  expct->add_option("--limit", exp_limit, "N values for the large-N limit table")->delimiter(',');
  expct->add_option("--d0", exp_d0, "seed fraction for --limit");

  // plan-time
  Common pt_common;
  std::optional<double> pt_alpha, pt_d0, pt_gamma;
  auto* pt = app.add_subcommand("plan-time", "time for a uniform-threshold cascade to reach alpha");
  pt_common.attach(pt);
  pt->add_option("--alpha", pt_alpha, "target active fraction");
  pt->add_option("--d0", pt_d0, "seed fraction");
  pt->add_option("--gamma", pt_gamma, "influence scale Gamma");

  // plan-seed
  Common ps_common;
  std::optional<double> ps_alpha, ps_deadline, ps_gamma, ps_eps;
  auto* ps = app.add_subcommand("plan-seed", "smallest seed reaching alpha by a deadline (bisection)");
  ps_common.attach(ps);
  ps->add_option("--alpha", ps_alpha, "target active fraction");
  ps->add_option("--deadline,-T", ps_deadline, "deadline in fluid time (1 unit ~ one step of the exact chain)");
  ps->add_option("--gamma", ps_gamma, "influence scale Gamma");
  ps->add_option("--eps", ps_eps, "stop when |F - G| < eps")->check(CLI::PositiveNumber);

  // plan-sweep
  Common sw_common;
  std::vector<double> sw_gammas, sw_alphas, sw_deadlines;
  std::optional<double> sw_eps;
  auto* sw = app.add_subcommand("plan-sweep", "seed planning over a grid of (Gamma, alpha, T)");
  sw_common.attach(sw);
  sw->add_option("--gammas", sw_gammas, "comma separated Gamma values")->delimiter(',')->required();
  sw->add_option("--alphas", sw_alphas, "comma separated alpha values")->delimiter(',')->required();
  sw->add_option("--deadlines", sw_deadlines, "comma separated deadlines")->delimiter(',')->required();
  sw->add_option("--eps", sw_eps, "bisection tolerance")->check(CLI::PositiveNumber);

  // multiclass
  Common mc_common;
  IntegratorFlags mc_int;
  std::vector<double> mc_seeds;
  bool mc_optimize = false;
  std::optional<double> mc_budget, mc_tend;
  std::optional<std::size_t> mc_resolution;
  auto* mc = app.add_subcommand("multiclass", "community model: trajectory or seed-allocation search");
  mc_common.attach(mc);
  mc_int.attach(mc);
  mc->add_option("--seeds", mc_seeds, "initial infectious fraction per community")->delimiter(',');
  mc->add_flag("--optimize", mc_optimize, "grid-search the allocation of --budget");
  mc->add_option("--budget", mc_budget, "total seed fraction for --optimize");
  mc->add_option("--resolution", mc_resolution, "grid points per free dimension")->check(CLI::Range(2, 100000));
  mc->add_option("--t-end", mc_tend, "integration horizon");

  // compare-sir
  Common cs_common;
  IntegratorFlags cs_int;
  std::optional<double> cs_lambda, cs_gamma, cs_d0, cs_tend;
  auto* cs = app.add_subcommand("compare-sir", "exponential thresholds against the SIR epidemic");
  cs_common.attach(cs);
  cs_int.attach(cs);
  cs->add_option("--lambda", cs_lambda, "exponential threshold rate")->check(CLI::PositiveNumber);
  cs->add_option("--gamma", cs_gamma, "influence scale Gamma");
  cs->add_option("--d0", cs_d0, "initial infectious fraction");
  cs->add_option("--t-end", cs_tend, "final fluid time");

  // convergence
  Common cv_common;
  DistFlags cv_dist;
  std::optional<double> cv_gamma, cv_d0, cv_tend;
  std::vector<double> cv_ns;
  std::optional<std::size_t> cv_runs;
  std::optional<std::uint64_t> cv_seed;
  std::optional<std::string> cv_route;
  auto* cv = app.add_subcommand("convergence", "ensemble-mean distance to the fluid limit across N");
  cv_common.attach(cv);
  cv_dist.attach(cv);
  cv->add_option("--gamma", cv_gamma, "influence scale Gamma");
  cv->add_option("--d0", cv_d0, "initial infectious fraction");
  cv->add_option("--n-list", cv_ns, "ascending population sizes")->delimiter(',');
  cv->add_option("--runs", cv_runs, "replications per N")->check(CLI::PositiveNumber);
  cv->add_option("--seed", cv_seed, "base seed");
  cv->add_option("--route", cv_route, "scaled or exact")->check(CLI::IsMember({"exact", "scaled"}));
  cv->add_option("--t-end", cv_tend, "comparison horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    using namespace hilt::cli;
    if (*ode) {
      ode_common.load();
      const Config& c = ode_common.config;
      OdeArgs a;
      a.dist = ode_dist.resolve(c);
      a.gamma_scale = pick(ode_gamma, c, "gamma", a.gamma_scale);
      a.d0 = pick(ode_d0, c, "d0", a.d0);
      a.t_end = pick(ode_tend, c, "t_end", a.t_end);
      a.opts = ode_int.resolve(c);
      a.closed_form = ode_closed;
      a.format = format_from_string(ode_common.format);
      emit(cmd_ode(a), ode_common);
    } else if (*sim) {
      sim_common.load();
      const Config& c = sim_common.config;
      SimulateArgs a;
      a.cfg.dist = sim_dist.resolve(c);
      a.cfg.n = pick(sim_n, c, "n", a.cfg.n);
      if (a.cfg.n < 1) throw CLI::ValidationError("--n", "population size must be >= 1");
      a.cfg.gamma_scale = pick(sim_gamma, c, "gamma", a.cfg.gamma_scale);
      a.cfg.d0 = pick(sim_d0, c, "d0", a.cfg.d0);
      a.route = hilt::route_from_string(pick_string(sim_route, c, "route", "exact"));
      a.seed = pick(sim_seed, c, "seed", a.seed);
      a.runs = pick(sim_runs, c, "runs", a.runs);
      a.max_steps = pick(sim_max_steps, c, "max_steps", a.max_steps);
      a.format = format_from_string(sim_common.format);
      emit(cmd_simulate(a), sim_common);
    } else if (*expct) {
      exp_common.load();
      const Config& c = exp_common.config;
      ExpectedArgs a;
      a.n = pick(exp_n, c, "n", a.n);
      a.gamma_scale = pick(exp_gamma, c, "gamma", a.gamma_scale);
      a.stride = pick(exp_stride, c, "m_stride", a.stride);
      a.d0 = pick(exp_d0, c, "d0", a.d0);
      a.limit_ns = to_ints(exp_limit);
      a.format = format_from_string(exp_common.format);
      emit(cmd_expected(a), exp_common);
    } else if (*pt) {
      pt_common.load();
      const Config& c = pt_common.config;
      PlanTimeArgs a;
      a.alpha = pick(pt_alpha, c, "alpha", a.alpha);
      a.d0 = pick(pt_d0, c, "d0", a.d0);
      a.gamma_scale = pick(pt_gamma, c, "gamma", a.gamma_scale);
      a.format = format_from_string(pt_common.format);
      emit(cmd_plan_time(a), pt_common);
    } else if (*ps) {
      ps_common.load();
      const Config& c = ps_common.config;
      PlanSeedArgs a;
      a.alpha = pick(ps_alpha, c, "alpha", a.alpha);
      a.deadline = pick(ps_deadline, c, "deadline", a.deadline);
      a.gamma_scale = pick(ps_gamma, c, "gamma", a.gamma_scale);
      a.eps = pick(ps_eps, c, "eps", a.eps);
      a.format = format_from_string(ps_common.format);
      emit(cmd_plan_seed(a), ps_common);
    } else if (*sw) {
      sw_common.load();
      PlanSweepArgs a;
      a.gammas = sw_gammas;
      a.alphas = sw_alphas;
      a.deadlines = sw_deadlines;
      a.eps = pick(sw_eps, sw_common.config, "eps", a.eps);
      a.format = format_from_string(sw_common.format);
      emit(cmd_plan_sweep(a), sw_common);
    } else if (*mc) {
      mc_common.load();
      const Config& c = mc_common.config;
      MulticlassArgs a(parse_network(c));
      a.seeds = mc_seeds;
      if (a.seeds.empty()) {
        if (auto s = c.get("seeds")) a.seeds = parse_list(*s);
      }
      a.optimize = mc_optimize;
      a.budget = pick(mc_budget, c, "budget", a.budget);
      a.resolution = pick(mc_resolution, c, "resolution", a.resolution);
      a.t_end = pick(mc_tend, c, "t_end", a.t_end);
      a.opts = mc_int.resolve(c);
      a.format = format_from_string(mc_common.format);
      if (!a.optimize && a.seeds.size() != a.net.size()) {
        throw CLI::ValidationError("--seeds", "give one seed per community (or --optimize)");
      }
      emit(cmd_multiclass(a), mc_common);
    } else if (*cs) {
      cs_common.load();
      const Config& c = cs_common.config;
      CompareSirArgs a;
      a.lambda = pick(cs_lambda, c, "lambda", a.lambda);
      a.gamma_scale = pick(cs_gamma, c, "gamma", a.gamma_scale);
      a.d0 = pick(cs_d0, c, "d0", a.d0);
      a.t_end = pick(cs_tend, c, "t_end", a.t_end);
      a.opts = cs_int.resolve(c);
      a.format = format_from_string(cs_common.format);
      emit(cmd_compare_sir(a), cs_common);
    } else if (*cv) {
      cv_common.load();
      const Config& c = cv_common.config;
      ConvergenceArgs a;
      a.cfg.dist = cv_dist.resolve(c);
      a.cfg.gamma_scale = pick(cv_gamma, c, "gamma", a.cfg.gamma_scale);
      a.cfg.d0 = pick(cv_d0, c, "d0", a.cfg.d0);
      if (!cv_ns.empty()) {
        a.n_list = to_ints(cv_ns);
      } else if (auto s = c.get("n_list")) {
        a.n_list = to_ints(parse_list(*s));
      }
      a.runs = pick(cv_runs, c, "runs", a.runs);
      a.seed = pick(cv_seed, c, "seed", a.seed);
      a.route = hilt::route_from_string(pick_string(cv_route, c, "route", "scaled"));
      a.t_end = pick(cv_tend, c, "t_end", a.t_end);
      a.format = format_from_string(cv_common.format);
      emit(cmd_convergence(a), cv_common);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hilt::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const hilt::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
