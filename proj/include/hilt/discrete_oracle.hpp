#pragma once

#include <cstdint>
#include <vector>

namespace hilt {

/// Expected terminal cascade size h(m) of the N-node complete graph with
/// edge weight gamma and uniform thresholds, started from m active nodes:
///   h(m) = m [1 + (N-m) gamma [1 + (N-m-1) gamma [1 + ... ]]].
/// Requires 0 <= m <= N and gamma (N - 1) <= 1.
double expected_spread(std::int64_t n, double gamma, std::int64_t m);

/// h(m) for every m = 0..N, built with the one-step recursion
///   h(k) = k [1 + gamma (N - k) h(k+1) / (k+1)],   h(N) = N.
struct ExpectedSpreadTable {
  std::int64_t n = 0;
  double gamma = 0.0;
  std::vector<double> values;  // values[m] = h(m)

  static ExpectedSpreadTable build(std::int64_t n, double gamma);
  double operator[](std::int64_t m) const { return values.at(static_cast<std::size_t>(m)); }
};

struct LimitRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double h_over_n = 0.0;
  double b_inf = 0.0;
  double rel_error = 0.0;
};

/// h(round(d0 N)) / N with gamma = Gamma / N against the fluid terminal
/// spread b_inf = d0 / (1 - (1 - d0) Gamma), one row per N.
std::vector<LimitRow> limit_check(double gamma_scale, double d0, const std::vector<std::int64_t>& n_list);

/// True when rel_error strictly decreases down the table.
bool errors_decreasing(const std::vector<LimitRow>& rows);

}  // namespace hilt
