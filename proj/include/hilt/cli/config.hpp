#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hilt/multiclass.hpp"
#include "hilt/threshold_dist.hpp"

namespace hilt::cli {

/// Key-value configuration file.
///
///   # comment
///   dist = "weibull"; scale = 1.0; shape = 5.0
///   gamma = 0.9
///   [community]
///   size = 0.7
///   dist = exponential; rate = 1
///   [community]
///   ...
///   G = [[2, 0.1], [0.1, 2]]
///
/// Statements end at ';' or a newline. Values may be double-quoted. Dashes
/// in keys are read as underscores, so `t-end` and `t_end` are the same key.
/// Keys after a `[community]` header belong to that community, except `G`,
/// which is always global.
struct Config {
  using Section = std::map<std::string, std::string>;

  Section global;
  std::vector<Section> communities;

  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<long long> get_int(const std::string& key) const;
};

/// Builds a threshold law from `dist` plus its parameters: `rate` (alias
/// `lambda`) for exponential; `scale` and `shape` for weibull/loglogistic.
ThresholdDistribution parse_distribution(const Config::Section& entries);

/// "[[a, b], [c, d]]" -> row-major values; `rows` receives the row count.
std::vector<double> parse_matrix(std::string_view literal, std::size_t& rows);

/// Comma separated numbers, e.g. "0.1,0.2, 0.3".
std::vector<double> parse_list(std::string_view text);

/// Network from the community sections and the global G matrix.
CommunityNetwork parse_network(const Config& cfg);

}  // namespace hilt::cli
