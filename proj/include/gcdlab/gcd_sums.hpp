#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcdlab/arith.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// T0: K(m,n) = (m,n)/(m+n).  T1: K(m,n) = (m,n)/sqrt(mn).
enum class GcdKernel { T0, T1 };

std::string_view to_string(GcdKernel kind) noexcept;
GcdKernel parse_gcd_kernel(std::string_view s);

double kernel_entry(GcdKernel kind, std::uint64_t m, std::uint64_t n) noexcept;

enum class GcdEvaluator {
  Direct,          ///< O(|supp|^2) pair loop, rows in parallel
  DivisorGrouped,  ///< (m,n) = sum_{d|(m,n)} phi(d); T1 separates, T0 uses FFT convolutions
  Auto,
};

/// sum_{m1,m2<=N} w(m1) w(m2) K(m1,m2). Throws InvalidArgument on zero weights
/// or when the sieve is too short for the grouped evaluator.
double gcd_quadratic_form(const WeightVector& w, GcdKernel kind, const FactorSieve& sieve,
                          GcdEvaluator evaluator = GcdEvaluator::Auto);

struct GcdSumReport {
  std::uint32_t n = 0;
  GcdKernel kind = GcdKernel::T1;
  std::string weight_desc;
  double raw = 0.0;
  double ratio = 0.0;  ///< N * raw / l1(w)^2
  double seconds = 0.0;
};

GcdSumReport normalized_ratio(const WeightVector& w, GcdKernel kind, const FactorSieve& sieve,
                              GcdEvaluator evaluator = GcdEvaluator::Auto);

/// S(B) = sum_{m1,m2 in B} (m1,m2)/(m1+m2). B nonempty, entries >= 1.
double set_gcd_sum(std::span<const std::uint32_t> set);

/// Weighted count of quadruples m1 n1 = m2 n2 (all <= N) with weights on the
/// m's only, via the count floor(N (m1,m2) / max(m1,m2)) of admissible n.
double crossed_energy(const WeightVector& w);

struct GcdMinimum {
  WeightVector weights;  ///< on the simplex (l1 = 1)
  double ratio = 0.0;    ///< N w^T K w / l1^2
  double gap = 0.0;      ///< Frank-Wolfe gap of the normalized objective
  std::size_t iterations = 0;
};

/// Infimum of N w^T K w / (1^T w)^2 over w >= 0, solved as a convex QP on the
/// simplex. Deterministic; throws ConvergenceFailure within the budget.
GcdMinimum exact_minimize(std::uint32_t n, GcdKernel kind, const FactorSieve& sieve, double tol,
                          std::size_t max_iterations = 2'000'000);

struct LevelSweep {
  unsigned k = 0;             ///< argmin level (smallest on ties)
  double ratio = 0.0;         ///< normalized ratio at k
  double kappa = 0.0;         ///< k / log log N (0 when N < 3)
  std::vector<double> ratios; ///< ratio per level, NaN when the level is empty
};

/// Sweeps k = 0..max Omega over the level weights w_k.
LevelSweep minimize_over_levels(std::uint32_t n, GcdKernel kind, const FactorSieve& sieve);

/// Raw T1 forms of every level w_k at once: sum_d phi(d) (sum_{d|m, Omega(m)=k} m^{-1/2})^2.
std::vector<double> t1_level_forms(std::uint32_t n, const FactorSieve& sieve);

/// Geometric grid 1 = x_0 < x_1 < ... <= x_max = X (ratio about sqrt 2).
std::vector<std::uint32_t> geometric_grid(std::uint32_t x_max);

/// Max over the geometric grid of x <= X of the level-minimized T0(x).
double t0_max_profile(std::uint32_t x_max, const FactorSieve& sieve);

}  // namespace gcdlab
