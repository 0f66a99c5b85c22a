#include "hilt/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "hilt/convergence.hpp"
#include "hilt/discrete_oracle.hpp"
#include "hilt/errors.hpp"
#include "hilt/fluid_ode.hpp"
#include "hilt/planner.hpp"

namespace hilt::cli {
namespace {

using nlohmann::json;

json samples_json(const Trajectory& traj) {
  json rows = json::array();
  for (const auto& s : traj.samples) rows.push_back({s.time, s.b, s.d});
  return rows;
}

json trajectory_json(const Trajectory& traj) {
  return json{{"route", std::string(to_string(traj.route))},
              {"terminal", traj.terminal},
              {"degenerate_events", traj.degenerate_events},
              {"final_active", traj.final_active()},
              {"columns", {"time", "b", "d"}},
              {"samples", samples_json(traj)}};
}

json document(const std::string& command, json config) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"config", std::move(config)}};
}

json options_json(const IntegratorOptions& o) {
  return json{{"step", o.step},       {"d_stop", o.d_stop},     {"eps_haz", o.eps_haz},
              {"adaptive", o.adaptive}, {"adaptive_tol", o.adaptive_tol}, {"record_stride", o.record_stride}};
}

json hilt_config_json(const HiltConfig& cfg) {
  return json{{"n", cfg.n}, {"gamma", cfg.gamma_scale}, {"d0", cfg.d0}, {"dist", cfg.dist.describe()}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw DomainError("unknown output format '" + name + "' (csv, json)");
}

std::string fmt_num(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "time,b,d\n";
  for (const auto& s : traj.samples) out += fmt_num(s.time) + "," + fmt_num(s.b) + "," + fmt_num(s.d) + "\n";
  return out;
}

Output cmd_ode(const OdeArgs& args) {
  Trajectory traj;
  if (args.closed_form) {
    if (!args.dist.is_uniform()) throw DomainError("the closed form exists for uniform thresholds only");
    traj = uniform_closed_form_trajectory(args.gamma_scale, args.d0, args.t_end,
                                          args.opts.step * static_cast<double>(std::max<std::size_t>(1, args.opts.record_stride)));
  } else {
    traj = integrate(args.dist, args.gamma_scale, args.d0, args.t_end, args.opts);
  }
  Output out;
  out.summary = "final active fraction " + fmt_num(traj.final_active()) + (traj.terminal ? " (terminal)" : "");
  if (args.format == Format::Csv) {
    out.body = trajectory_csv(traj);
  } else {
    json doc = document("ode", {{"dist", args.dist.describe()},
                                {"gamma", args.gamma_scale},
                                {"d0", args.d0},
                                {"t_end", args.t_end},
                                {"closed_form", args.closed_form},
                                {"integrator", options_json(args.opts)}});
    doc["trajectory"] = trajectory_json(traj);
    out.body = dump(doc);
  }
  return out;
}

Output cmd_simulate(const SimulateArgs& args) {
  const Ensemble ens = ensemble(args.cfg, args.route, args.runs, args.seed, args.max_steps);
  const Trajectory& shown = args.runs == 1 ? ens.runs.front() : ens.mean;
  Output out;
  out.summary = "mean final active fraction " + fmt_num(shown.final_active()) + " over " +
                std::to_string(args.runs) + " run(s)";
  if (args.format == Format::Csv) {
    out.body = trajectory_csv(shown);
  } else {
    json doc = document("simulate", hilt_config_json(args.cfg));
    doc["config"]["route"] = std::string(to_string(args.route));
    doc["config"]["seed"] = args.seed;
    doc["config"]["runs"] = args.runs;
    doc["config"]["max_steps"] = args.max_steps;
    json runs = json::array();
    for (std::size_t i = 0; i < ens.runs.size(); ++i) {
      const auto& r = ens.runs[i];
      runs.push_back({{"run", i},
                      {"seed", derive_seed(args.seed, i)},
                      {"terminal", r.terminal},
                      {"steps", r.samples.size() - 1},
                      {"final_active", r.final_active()},
                      {"degenerate_events", r.degenerate_events}});
    }
    doc["runs"] = runs;
    doc["mean"] = trajectory_json(shown);
    if (args.runs > 1) doc["stddev"] = samples_json(ens.stddev);
    out.body = dump(doc);
  }
  return out;
}

Output cmd_expected(const ExpectedArgs& args) {
  Output out;
  if (!args.limit_ns.empty()) {
    const auto rows = limit_check(args.gamma_scale, args.d0, args.limit_ns);
    out.summary = std::string("relative error ") + (errors_decreasing(rows) ? "decreasing" : "NOT decreasing") + " in N";
    if (args.format == Format::Csv) {
      out.body = "N,m,h_over_n,b_inf,rel_error\n";
      for (const auto& r : rows) {
        out.body += std::to_string(r.n) + "," + std::to_string(r.m) + "," + fmt_num(r.h_over_n) + "," +
                    fmt_num(r.b_inf) + "," + fmt_num(r.rel_error) + "\n";
      }
    } else {
      json doc = document("expected", {{"gamma", args.gamma_scale}, {"d0", args.d0}, {"limit_ns", args.limit_ns}});
      json table = json::array();
      for (const auto& r : rows) {
        table.push_back({{"N", r.n}, {"m", r.m}, {"h_over_n", r.h_over_n}, {"b_inf", r.b_inf}, {"rel_error", r.rel_error}});
      }
      doc["limit"] = table;
      out.body = dump(doc);
    }
    return out;
  }

  if (args.stride < 1) throw DomainError("stride must be >= 1");
  const double gamma = args.gamma_scale / static_cast<double>(args.n);
  const ExpectedSpreadTable table = ExpectedSpreadTable::build(args.n, gamma);
  const double n = static_cast<double>(args.n);
  std::vector<std::int64_t> ms;
  for (std::int64_t m = 0; m <= args.n; m += args.stride) ms.push_back(m);
  if (ms.back() != args.n) ms.push_back(args.n);
  out.summary = "h(N) = " + fmt_num(table[args.n]) + " for N = " + std::to_string(args.n);
  if (args.format == Format::Csv) {
    out.body = "m,h,h_over_n\n";
    for (auto m : ms) out.body += std::to_string(m) + "," + fmt_num(table[m]) + "," + fmt_num(table[m] / n) + "\n";
  } else {
    json doc = document("expected", {{"n", args.n}, {"gamma_scale", args.gamma_scale}, {"gamma", gamma}, {"stride", args.stride}});
    json rows = json::array();
    for (auto m : ms) rows.push_back({m, table[m], table[m] / n});
    doc["columns"] = {"m", "h", "h_over_n"};
    doc["rows"] = rows;
    out.body = dump(doc);
  }
  return out;
}

Output cmd_plan_time(const PlanTimeArgs& args) {
  const double t = time_to_reach(args.alpha, args.d0, args.gamma_scale);
  Output out;
  out.summary = "T = " + fmt_num(t);
  if (args.format == Format::Csv) {
    out.body = "gamma,alpha,d0,T\n" + fmt_num(args.gamma_scale) + "," + fmt_num(args.alpha) + "," +
               fmt_num(args.d0) + "," + fmt_num(t) + "\n";
  } else {
    json doc = document("plan-time", {{"gamma", args.gamma_scale}, {"alpha", args.alpha}, {"d0", args.d0}});
    doc["T"] = t;
    out.body = dump(doc);
  }
  return out;
}

Output cmd_plan_seed(const PlanSeedArgs& args) {
  const SeedPlan plan = seed_for_deadline(args.alpha, args.deadline, args.gamma_scale, args.eps);
  const double reached = active_at(args.deadline, plan.d0_star, args.gamma_scale);
  Output out;
  out.summary = "d0* = " + fmt_num(plan.d0_star) + " (a(T; d0*) = " + fmt_num(reached) + ", " +
                std::to_string(plan.iterations) + " iterations)";
  if (args.format == Format::Csv) {
    out.body = "gamma,alpha,T,d0_star,iterations\n" + fmt_num(args.gamma_scale) + "," + fmt_num(args.alpha) + "," +
               fmt_num(args.deadline) + "," + fmt_num(plan.d0_star) + "," + std::to_string(plan.iterations) + "\n";
  } else {
    json doc = document("plan-seed", {{"gamma", args.gamma_scale}, {"alpha", args.alpha}, {"T", args.deadline}, {"eps", args.eps}});
    doc["d0_star"] = plan.d0_star;
    doc["iterations"] = plan.iterations;
    doc["residual"] = plan.residual;
    doc["active_at_deadline"] = reached;
    out.body = dump(doc);
  }
  return out;
}

Output cmd_plan_sweep(const PlanSweepArgs& args) {
  const auto cells = sweep(args.gammas, args.alphas, args.deadlines, args.eps);
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.plan ? 0 : 1;
  Output out;
  out.summary = std::to_string(cells.size()) + " cells, " + std::to_string(failed) + " failed";
  if (args.format == Format::Csv) {
    out.body = "gamma,alpha,T,d0_star,iterations\n";
    for (const auto& c : cells) {
      out.body += fmt_num(c.gamma_scale) + "," + fmt_num(c.alpha) + "," + fmt_num(c.deadline) + "," +
                  (c.plan ? fmt_num(c.plan->d0_star) + "," + std::to_string(c.plan->iterations) : std::string("nan,0")) +
                  "\n";
    }
  } else {
    json doc = document("plan-sweep", {{"gammas", args.gammas}, {"alphas", args.alphas}, {"deadlines", args.deadlines}, {"eps", args.eps}});
    json rows = json::array();
    for (const auto& c : cells) {
      json row{{"gamma", c.gamma_scale}, {"alpha", c.alpha}, {"T", c.deadline}};
      if (c.plan) {
        row["d0_star"] = c.plan->d0_star;
        row["iterations"] = c.plan->iterations;
      } else {
        row["error"] = c.error;
      }
      rows.push_back(row);
    }
    doc["cells"] = rows;
    out.body = dump(doc);
  }
  return out;
}

Output cmd_multiclass(const MulticlassArgs& args) {
  const std::size_t m = args.net.size();
  json net_json{{"sizes", args.net.sizes()}};
  json g = json::array();
  json dists = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m; ++j) row.push_back(args.net.influence(i, j));
    g.push_back(row);
    dists.push_back(args.net.dist(i).describe());
  }
  net_json["G"] = g;
  net_json["dists"] = dists;

  Output out;
  if (args.optimize) {
    const SeedAllocation alloc = optimize_seed(args.net, args.budget, args.resolution, args.t_end, args.opts);
    std::string best;
    for (std::size_t i = 0; i < m; ++i) best += (i ? "," : "") + fmt_num(alloc.best.seeds[i]);
    out.summary = "best allocation (" + best + ") total spread " + fmt_num(alloc.best.total_spread);
    if (args.format == Format::Csv) {
      for (std::size_t i = 0; i < m; ++i) out.body += "d" + std::to_string(i + 1) + "_0,";
      out.body += "total_spread\n";
      for (const auto& p : alloc.surface) {
        for (double s : p.seeds) out.body += fmt_num(s) + ",";
        out.body += fmt_num(p.total_spread) + "\n";
      }
    } else {
      json doc = document("multiclass", {{"network", net_json}, {"budget", args.budget}, {"resolution", args.resolution},
                                         {"t_end", args.t_end}, {"integrator", options_json(args.opts)}});
      doc["best"] = {{"seeds", alloc.best.seeds}, {"total_spread", alloc.best.total_spread}};
      json surface = json::array();
      for (const auto& p : alloc.surface) surface.push_back({{"seeds", p.seeds}, {"total_spread", p.total_spread}});
      doc["surface"] = surface;
      out.body = dump(doc);
    }
    return out;
  }

  const MultiTrajectory traj = integrate_multiclass(args.net, args.seeds, args.t_end, args.opts);
  out.summary = "total final active fraction " + fmt_num(traj.total_final()) + (traj.terminal ? " (terminal)" : "");
  if (args.format == Format::Csv) {
    out.body = "time";
    for (std::size_t i = 0; i < m; ++i) out.body += ",b" + std::to_string(i + 1) + ",d" + std::to_string(i + 1);
    out.body += "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      out.body += fmt_num(traj.times[k]);
      for (std::size_t i = 0; i < m; ++i) out.body += "," + fmt_num(traj.b[k][i]) + "," + fmt_num(traj.d[k][i]);
      out.body += "\n";
    }
  } else {
    json doc = document("multiclass", {{"network", net_json}, {"seeds", args.seeds}, {"t_end", args.t_end},
                                       {"integrator", options_json(args.opts)}});
    doc["terminal"] = traj.terminal;
    doc["total_final"] = traj.total_final();
    json rows = json::array();
    for (std::size_t k = 0; k < traj.times.size(); ++k) rows.push_back({{"time", traj.times[k]}, {"b", traj.b[k]}, {"d", traj.d[k]}});
    doc["samples"] = rows;
    out.body = dump(doc);
  }
  return out;
}

Output cmd_compare_sir(const CompareSirArgs& args) {
  const SirComparison cmp = sir_comparator(args.lambda, args.gamma_scale, args.d0, args.t_end, args.opts);
  Output out;
  out.summary = "sup distance HILT vs SIR = " + fmt_num(cmp.sup_distance);
  if (args.format == Format::Csv) {
    out.body = "time,b_hilt,d_hilt,b_sir,d_sir\n";
    for (std::size_t k = 0; k < cmp.hilt.samples.size(); ++k) {
      const auto& h = cmp.hilt.samples[k];
      const auto& s = cmp.sir.samples[k];
      out.body += fmt_num(h.time) + "," + fmt_num(h.b) + "," + fmt_num(h.d) + "," + fmt_num(s.b) + "," + fmt_num(s.d) + "\n";
    }
  } else {
    json doc = document("compare-sir", {{"lambda", args.lambda}, {"gamma", args.gamma_scale}, {"d0", args.d0},
                                        {"t_end", args.t_end}, {"integrator", options_json(args.opts)}});
    doc["sup_distance"] = cmp.sup_distance;
    doc["hilt"] = trajectory_json(cmp.hilt);
    doc["sir"] = trajectory_json(cmp.sir);
    out.body = dump(doc);
  }
  return out;
}

Output cmd_convergence(const ConvergenceArgs& args) {
  const auto rows = convergence_report(args.cfg, args.route, args.n_list, args.runs, args.seed, args.t_end, args.opts);
  const bool ok = nonincreasing_within_noise(rows);
  Output out;
  out.summary = std::string("sup distance ") + (ok ? "nonincreasing" : "NOT nonincreasing") +
                " in N within Monte Carlo noise; N = " + std::to_string(rows.back().n) + " distance " +
                fmt_num(rows.back().sup_dist);
  if (args.format == Format::Csv) {
    out.body = "N,sup_dist\n";
    for (const auto& r : rows) out.body += std::to_string(r.n) + "," + fmt_num(r.sup_dist) + "\n";
  } else {
    json config = hilt_config_json(args.cfg);
    config.erase("n");
    config["route"] = std::string(to_string(args.route));
    config["n_list"] = args.n_list;
    config["runs"] = args.runs;
    config["seed"] = args.seed;
    config["t_end"] = args.t_end;
    json doc = document("convergence", config);
    json table = json::array();
    for (const auto& r : rows) table.push_back({{"N", r.n}, {"sup_dist", r.sup_dist}, {"noise", r.noise}});
    doc["rows"] = table;
    doc["nonincreasing_within_noise"] = ok;
    out.body = dump(doc);
  }
  return out;
}

}  // namespace hilt::cli
