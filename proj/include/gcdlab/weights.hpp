#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gcdlab/arith.hpp"

namespace gcdlab {

/// Nonnegative weights w(1..N). Entry m is read as w(m); storage is 0-based.
class WeightVector {
 public:
  WeightVector() = default;
  /// values[i] is w(i+1). Throws InvalidArgument on negative or non-finite entries.
  WeightVector(std::vector<double> values, std::string descriptor);

  std::uint32_t limit() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
  double operator()(std::uint32_t m) const noexcept { return values_[m - 1]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  /// Every entry is an integer in [0, 2^20]; evaluators then run in exact arithmetic.
  bool is_integral() const noexcept { return integral_; }
  double l1_norm() const noexcept { return l1_; }
  bool is_zero() const noexcept { return l1_ == 0.0; }

  /// Indices m with w(m) > 0, ascending.
  std::vector<std::uint32_t> support() const;

  WeightVector scaled(double c) const;

 private:
  std::vector<double> values_;
  std::string descriptor_;
  bool integral_ = true;
  double l1_ = 0.0;
};

/// w(m) = 1 exactly when Omega(m) = k.
WeightVector omega_level_weights(const FactorSieve& sieve, std::uint32_t n, unsigned k);

/// w(m) = 1 exactly when Omega(m) > log log N (natural logarithms). N >= 2.
WeightVector omega_tail_weights(const FactorSieve& sieve, std::uint32_t n);

WeightVector all_ones(std::uint32_t n);

/// 0/1 weights on [1, n]; members outside [1, n] are an InvalidArgument.
WeightVector indicator(std::uint32_t n, std::span<const std::uint32_t> members);

/// round(kappa * log log N), ties up, clamped at 0. N >= 3.
unsigned kappa_to_k(std::uint64_t n, double kappa);

double l1_norm(const WeightVector& w) noexcept;

/// log log x; the iterated logarithm used throughout (never log base 2).
double loglog(double x);

struct LevelMass {
  unsigned k = 0;
  double kappa = 0.0;     ///< k / log log N
  double l1 = 0.0;        ///< |{m <= N : Omega(m) = k}|
  double ratio = 0.0;     ///< l1 (log N)^{Q(kappa)} sqrt(log log N) / N
  bool in_range = false;  ///< kappa0 <= kappa <= 2 - kappa0
};

/// One row per level 0 <= k <= max Omega(N). N >= 3, 0 < kappa0 < 1.
std::vector<LevelMass> level_mass_profile(const FactorSieve& sieve, std::uint32_t n, double kappa0 = 0.05);

/// One "m,w(m)" line per entry with w(m) != 0.
void write_weight_csv(std::ostream& os, const WeightVector& w);

/// Reads "m,w" lines (blank lines and '#' comments skipped) into weights on [1, n].
/// With n == 0 the limit is the largest m seen.
WeightVector read_weight_csv(std::istream& is, std::uint32_t n, std::string descriptor);

}  // namespace gcdlab
