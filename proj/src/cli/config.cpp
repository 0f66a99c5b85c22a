#include "hilt/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hilt/errors.hpp"

namespace hilt::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

double to_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse " + std::string(what) + " '" + t + "' as a number");
  }
  return value;
}

// Splits a line into statements on ';' outside quotes and brackets, dropping
// a trailing '#' comment.
std::vector<std::string> statements(std::string_view line) {
  std::vector<std::string> out;
  std::string current;
  bool quoted = false;
  int depth = 0;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (!quoted) {
      if (c == '#') break;
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ';' && depth == 0) {
        out.push_back(current);
        current.clear();
        continue;
      }
    }
    current.push_back(c);
  }
  if (quoted) throw DomainError("unterminated quote in config line: " + std::string(line));
  out.push_back(current);
  return out;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  Section* target = &cfg.global;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string header = trim(line);
    if (header == "[community]") {
      cfg.communities.emplace_back();
      target = &cfg.communities.back();
      continue;
    }
    for (const std::string& raw : statements(line)) {
      const std::string stmt = trim(raw);
      if (stmt.empty()) continue;
      const auto eq = stmt.find('=');
      if (eq == std::string::npos) {
        throw DomainError("config line " + std::to_string(lineno) + ": expected key = value, got '" + stmt + "'");
      }
      const std::string key = normalize_key(trim(std::string_view(stmt).substr(0, eq)));
      std::string value = trim(std::string_view(stmt).substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      if (key.empty()) throw DomainError("config line " + std::to_string(lineno) + ": empty key");
      Section& dest = key == "G" ? cfg.global : *target;
      dest[key] = value;
    }
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = global.find(normalize_key(key));
  if (it == global.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Config::get_double(const std::string& key) const {
  if (auto v = get(key)) return to_double(*v, key);
  return std::nullopt;
}

std::optional<long long> Config::get_int(const std::string& key) const {
  if (auto v = get(key)) {
    const double x = to_double(*v, key);
    if (x != std::floor(x)) throw DomainError("config key '" + key + "' must be an integer");
    return static_cast<long long>(x);
  }
  return std::nullopt;
}

ThresholdDistribution parse_distribution(const Config::Section& entries) {
  auto need = [&](std::initializer_list<const char*> keys) -> double {
    for (const char* k : keys) {
      if (auto it = entries.find(k); it != entries.end()) return to_double(it->second, k);
    }
    throw DomainError(std::string("distribution is missing parameter '") + *keys.begin() + "'");
  };
  const auto it = entries.find("dist");
  const std::string name = it == entries.end() ? "uniform" : it->second;
  if (name == "uniform") return ThresholdDistribution::uniform();
  if (name == "exponential") return ThresholdDistribution::exponential(need({"rate", "lambda"}));
  if (name == "weibull") return ThresholdDistribution::weibull(need({"scale"}), need({"shape"}));
  if (name == "loglogistic") return ThresholdDistribution::loglogistic(need({"scale"}), need({"shape"}));
  throw DomainError("unknown distribution '" + name + "' (uniform, exponential, weibull, loglogistic)");
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (!trim(item).empty()) out.push_back(to_double(item, "list entry"));
  }
  return out;
}

std::vector<double> parse_matrix(std::string_view literal, std::size_t& rows) {
  const std::string s = trim(literal);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw DomainError("matrix literal must be [[...], ...]");
  std::vector<double> values;
  rows = 0;
  std::size_t cols = 0;
  std::size_t pos = 1;
  while (pos < s.size() - 1) {
    const auto open = s.find('[', pos);
    if (open == std::string::npos) break;
    const auto close = s.find(']', open);
    if (close == std::string::npos) throw DomainError("unbalanced brackets in matrix literal");
    const std::vector<double> row = parse_list(std::string_view(s).substr(open + 1, close - open - 1));
    if (rows == 0) cols = row.size();
    if (row.size() != cols || cols == 0) throw DomainError("matrix rows must be non-empty and equally long");
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
    pos = close + 1;
  }
  if (rows == 0 || rows != cols) throw DomainError("influence matrix must be square");
  return values;
}

CommunityNetwork parse_network(const Config& cfg) {
  if (cfg.communities.empty()) throw DomainError("network config needs at least one [community] block");
  std::vector<double> sizes;
  std::vector<ThresholdDistribution> dists;
  for (const auto& section : cfg.communities) {
    const auto it = section.find("size");
    if (it == section.end()) throw DomainError("every [community] block needs a size");
    sizes.push_back(to_double(it->second, "size"));
    dists.push_back(parse_distribution(section));
  }
  const auto g = cfg.get("G");
  if (!g) throw DomainError("network config needs an influence matrix G");
  std::size_t rows = 0;
  std::vector<double> matrix = parse_matrix(*g, rows);
  if (rows != sizes.size()) throw DomainError("G must be M x M for M communities");
  return CommunityNetwork(std::move(sizes), std::move(matrix), std::move(dists));
}

}  // namespace hilt::cli
