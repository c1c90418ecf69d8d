#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gcdlab {

// Error taxonomy shared by every module. The CLI maps InvalidArgument to a
// usage-style failure and everything else to a computation failure.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis of an analytic bound (e.g. A <= N, AN <= p) is violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An oracle guard or memory budget was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The root finder could not bracket a sign change.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative minimizer ran out of iterations; carries the best iterate.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> best_iterate,
                     double best_value, double gap)
      : std::runtime_error(what),
        best_iterate_(std::move(best_iterate)),
        best_value_(best_value),
        gap_(gap) {}

  const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
  double best_value() const noexcept { return best_value_; }
  double gap() const noexcept { return gap_; }

 private:
  std::vector<double> best_iterate_;
  double best_value_;
  double gap_;
};

}  // namespace gcdlab
