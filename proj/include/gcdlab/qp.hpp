#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gcdlab {

/// Symmetric PSD kernel entry K(i, j), 0-based.
using KernelEntry = std::function<double(std::size_t, std::size_t)>;

struct SimplexQpOptions {
  double tol = 1e-8;                       ///< stop when FW gap <= tol * objective
  std::size_t max_iterations = 2'000'000;
  std::size_t refresh_every = 2000;        ///< recompute the gradient from scratch
  std::size_t dense_limit = 2048;          ///< materialize K when n <= dense_limit
};

struct SimplexQpResult {
  std::vector<double> x;  ///< point on the probability simplex
  double value = 0.0;     ///< x^T K x
  double gap = 0.0;       ///< Frank-Wolfe duality gap at x (>= value - optimum)
  std::size_t iterations = 0;
};

/// Minimizes x^T K x over {x >= 0, sum x = 1} with pairwise (away-to-toward)
/// Frank-Wolfe steps and exact line search. Starts from the barycenter, so
/// the result is deterministic. The kernel is matrix-free above dense_limit.
///
/// Throws ConvergenceFailure (carrying the last iterate) if the gap target is
/// not met within max_iterations.
SimplexQpResult minimize_on_simplex(std::size_t n, const KernelEntry& kernel,
                                    const SimplexQpOptions& options = {});

}  // namespace gcdlab
