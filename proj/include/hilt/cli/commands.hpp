#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hilt/multiclass.hpp"
#include "hilt/rk4.hpp"
#include "hilt/stochastic_sim.hpp"
#include "hilt/threshold_dist.hpp"
#include "hilt/trajectory.hpp"

// Each command adapts one library operation to text output. No numerics
// live here; tests call the same operations directly and diff the results.
namespace hilt::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { Csv, Json };
Format format_from_string(const std::string& name);

struct Output {
  std::string body;     // CSV or JSON document
  std::string summary;  // one human-readable line for stdout
};

/// Shortest-ish fixed formatting used by every CSV writer ("%.12g").
std::string fmt_num(double value);

std::string trajectory_csv(const Trajectory& traj);

struct OdeArgs {
  ThresholdDistribution dist = ThresholdDistribution::uniform();
  double gamma_scale = 0.9;
  double d0 = 0.2;
  double t_end = 30.0;
  IntegratorOptions opts;
  bool closed_form = false;
  Format format = Format::Csv;
};
Output cmd_ode(const OdeArgs& args);

struct SimulateArgs {
  HiltConfig cfg;
  Route route = Route::Exact;
  std::uint64_t seed = 1;
  std::size_t runs = 1;
  std::int64_t max_steps = 1000000;
  Format format = Format::Csv;
};
Output cmd_simulate(const SimulateArgs& args);

struct ExpectedArgs {
  std::int64_t n = 3000;
  double gamma_scale = 0.9;  // gamma = Gamma / N
  std::int64_t stride = 1;
  /// Non-empty: emit the limit table N,m,h_over_n,b_inf,rel_error instead.
  std::vector<std::int64_t> limit_ns;
  double d0 = 0.2;
  Format format = Format::Csv;
};
Output cmd_expected(const ExpectedArgs& args);

struct PlanTimeArgs {
  double alpha = 0.5;
  double d0 = 0.2;
  double gamma_scale = 0.9;
  Format format = Format::Csv;
};
Output cmd_plan_time(const PlanTimeArgs& args);

struct PlanSeedArgs {
  double alpha = 0.7;
  double deadline = 15.0;
  double gamma_scale = 0.8;
  double eps = 1e-10;
  Format format = Format::Csv;
};
Output cmd_plan_seed(const PlanSeedArgs& args);

struct PlanSweepArgs {
  std::vector<double> gammas;
  std::vector<double> alphas;
  std::vector<double> deadlines;
  double eps = 1e-10;
  Format format = Format::Csv;
};
Output cmd_plan_sweep(const PlanSweepArgs& args);

struct MulticlassArgs {
  explicit MulticlassArgs(CommunityNetwork network) : net(std::move(network)) {}

  CommunityNetwork net;
  std::vector<double> seeds;  // trajectory mode
  bool optimize = false;
  double budget = 0.3;
  std::size_t resolution = 31;
  double t_end = 200.0;
  IntegratorOptions opts;
  Format format = Format::Csv;
};
Output cmd_multiclass(const MulticlassArgs& args);

struct CompareSirArgs {
  double lambda = 1.0;
  double gamma_scale = 0.9;
  double d0 = 0.2;
  double t_end = 30.0;
  IntegratorOptions opts;
  Format format = Format::Csv;
};
Output cmd_compare_sir(const CompareSirArgs& args);

struct ConvergenceArgs {
  HiltConfig cfg;
  Route route = Route::Scaled;
  std::vector<std::int64_t> n_list{50, 100, 500, 1000};
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  double t_end = 30.0;
  IntegratorOptions opts;
  Format format = Format::Csv;
};
Output cmd_convergence(const ConvergenceArgs& args);

}  // namespace hilt::cli
