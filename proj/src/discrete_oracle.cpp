#include "hilt/discrete_oracle.hpp"

#include <cmath>
#include <sstream>

#include "hilt/errors.hpp"

namespace hilt {
namespace {

void check_inputs(std::int64_t n, double gamma) {
  if (n < 1) throw DomainError("population size N must be >= 1");
  if (!(gamma >= 0.0)) throw DomainError("edge weight gamma must be >= 0");
  if (gamma * static_cast<double>(n - 1) > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "uniform thresholds need gamma (N - 1) <= 1, got " << gamma * static_cast<double>(n - 1);
    throw DomainError(os.str());
  }
}

}  // namespace

double expected_spread(std::int64_t n, double gamma, std::int64_t m) {
  check_inputs(n, gamma);
  if (m < 0 || m > n) throw DomainError("seed count m must lie in [0, N]");
  // Innermost bracket first: the factor (N - j) gamma vanishes at j = N.
  double bracket = 1.0;
  for (std::int64_t j = n - 1; j >= m; --j) {
    bracket = 1.0 + static_cast<double>(n - j) * gamma * bracket;
  }
  return static_cast<double>(m) * bracket;
}

ExpectedSpreadTable ExpectedSpreadTable::build(std::int64_t n, double gamma) {
  check_inputs(n, gamma);
  ExpectedSpreadTable table;
  table.n = n;
  table.gamma = gamma;
  table.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
  table.values[static_cast<std::size_t>(n)] = static_cast<double>(n);
  for (std::int64_t k = n - 1; k >= 1; --k) {
    const double next = table.values[static_cast<std::size_t>(k + 1)];
    const double kd = static_cast<double>(k);
    table.values[static_cast<std::size_t>(k)] =
        kd * (1.0 + gamma * static_cast<double>(n - k) * next / (kd + 1.0));
  }
  return table;
}

std::vector<LimitRow> limit_check(double gamma_scale, double d0, const std::vector<std::int64_t>& n_list) {
  if (!(gamma_scale >= 0.0 && gamma_scale <= 1.0)) throw DomainError("limit check requires Gamma in [0, 1]");
  if (!(d0 > 0.0 && d0 <= 1.0)) throw DomainError("limit check requires d0 in (0, 1]");
  const double b_inf = d0 / (1.0 - (1.0 - d0) * gamma_scale);
  std::vector<LimitRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    const auto m = static_cast<std::int64_t>(std::llround(d0 * static_cast<double>(n)));
    const double h = expected_spread(n, gamma_scale / static_cast<double>(n), m);
    const double ratio = h / static_cast<double>(n);
    rows.push_back(LimitRow{n, m, ratio, b_inf, std::abs(ratio - b_inf) / b_inf});
  }
  return rows;
}

bool errors_decreasing(const std::vector<LimitRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].rel_error < rows[i - 1].rel_error)) return false;
  }
  return true;
}

}  // namespace hilt
