#include "hilt/rng.hpp"

#include <cmath>

#include "hilt/errors.hpp"

namespace hilt {

std::int64_t Rng::binomial(std::int64_t n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binomial requires n >= 0 and p in [0, 1]");
  }
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);

  // Gaps between successes are Geometric(p); count the successes that land
  // within the first n trials.
  const double log_q = std::log1p(-p);
  std::int64_t successes = 0;
  double position = 0.0;
  const double limit = static_cast<double>(n);
  for (;;) {
    const double u = 1.0 - uniform();  // (0, 1]
    position += std::floor(std::log(u) / log_q) + 1.0;
    if (position > limit) break;
    ++successes;
  }
  return successes;
}

}  // namespace hilt
