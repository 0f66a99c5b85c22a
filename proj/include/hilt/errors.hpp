#pragma once

#include <stdexcept>
#include <string>

namespace hilt {

/// Input outside the mathematical domain of an operation (negative x,
/// parameters out of range, unreachable planning targets).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Hazard evaluated where 1 - F(x) = 0 or where h(x) diverges.
class SingularityError : public DomainError {
 public:
  explicit SingularityError(const std::string& what) : DomainError(what) {}
};

/// Integrator or iteration failure: simplex violation, non-convergence.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point iteration that ran out of iterations; keeps the last iterate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_iterate)
      : NumericalError(what), last_iterate_(last_iterate) {}

  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

}  // namespace hilt
