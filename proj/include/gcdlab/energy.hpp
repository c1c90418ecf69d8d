#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gcdlab/arith.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// Energy value: exact when every weight is integral, otherwise a double.
struct EnergyValue {
  bool exact = false;
  u128 integer = 0;
  double real = 0.0;

  double as_double() const noexcept { return exact ? static_cast<double>(integer) : real; }
  std::string to_string() const;
  friend bool operator==(const EnergyValue&, const EnergyValue&) = default;
};

enum class EnergyEvaluator { Quadruple, Histogram, Parametrized, Auto };

std::string_view to_string(EnergyEvaluator e) noexcept;

/// Literal sum over m1 m2 = n1 n2. Oracle only: throws ResourceLimit for N > 300.
EnergyValue energy_quadruple(const WeightVector& w);

/// sum_P r_w(P)^2 over sorted (product, weight) pairs. Throws ResourceLimit
/// when the number of pairs a <= b in the support exceeds pair_budget.
EnergyValue energy_histogram(const WeightVector& w, std::size_t pair_budget = std::size_t{1} << 25);

/// sum over coprime (d1, d2) of (sum_h w(h d1) w(h d2))^2.
EnergyValue energy_parametrized(const WeightVector& w);

EnergyValue energy(const WeightVector& w, EnergyEvaluator evaluator = EnergyEvaluator::Auto);

/// Exact energies of every level weight w_0 .. w_{max Omega} at N in
/// O(N log N) time and O(N max Omega) memory, from the coprime
/// parametrization grouped by max(d1, d2).
std::vector<u128> level_energies(const FactorSieve& sieve, std::uint32_t n);

struct EnergyReport {
  std::uint32_t n = 0;
  std::string weight_desc;
  EnergyValue value;
  double ratio = 0.0;  ///< N^2 E / l1^4
  EnergyEvaluator evaluator = EnergyEvaluator::Auto;
  double seconds = 0.0;
};

/// N^2 E(N, w) / l1(w)^4. Throws InvalidArgument on zero weights.
double energy_ratio(const WeightVector& w, EnergyEvaluator evaluator = EnergyEvaluator::Auto);
EnergyReport energy_report(const WeightVector& w, EnergyEvaluator evaluator = EnergyEvaluator::Auto);

/// Level sweep of the energy ratio (smallest k on ties).
LevelSweep minimize_energy_over_levels(std::uint32_t n, const FactorSieve& sieve);

/// |{m1, n1 in A; m2, n2 in B : m1 m2 = n1 n2}|. Members must be >= 1.
u128 set_energy(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// set_energy([1, N], B); members of B must lie in [1, N].
u128 asym_energy(std::uint32_t n, std::span<const std::uint32_t> b);

/// |{a b : a in A, b in B}| by a segmented bitmap over [1, max A * max B].
std::uint64_t distinct_product_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// A(N) = |{a b : a, b <= N}|.
std::uint64_t multiplication_table_count(std::uint32_t n);

struct OmegaLevel {
  unsigned k;
};
/// Omega(m) >= log log N.
struct OmegaTail {};
using MSelector = std::variant<OmegaLevel, OmegaTail>;

/// H_{k,r}(N) (or H_{+,r}(N)): distinct products n m with n, m <= N,
/// m chosen by the selector and Omega(n) = r.
std::uint64_t h_count(const FactorSieve& sieve, std::uint32_t n, const MSelector& m_sel, unsigned r);

}  // namespace gcdlab
