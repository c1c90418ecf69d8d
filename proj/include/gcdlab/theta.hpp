#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcdlab/dirichlet.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

/// The (p-1)/2 even characters (even index), principal first.
std::vector<Character> even_characters(const CharacterTable& table);

struct ThetaValue {
  std::uint64_t p = 0;
  std::uint32_t index = 0;
  double x = 0.0;
  cplx value;
  std::uint64_t n_max = 0;
  double tail_bound = 0.0;  ///< bound on sum_{n > n_max} e^{-pi n^2 x / p}
};

/// theta(x, chi) = sum_{n >= 1} chi(n) e^{-pi n^2 x / p}, truncated at
/// n_max = ceil(sqrt(p (17 log 10 + log p) / (pi x))). Throws for x <= 0.
ThetaValue theta(const Character& chi, double x);

/// theta(x, chi) for every even chi, sharing one table of Gaussian weights.
std::vector<ThetaValue> theta_even(const CharacterTable& table, double x);

/// floor(sqrt(p / 3)) in integer arithmetic.
std::uint64_t mollifier_cutoff(std::uint64_t p);

/// M(chi) = sum_m w(m) conj(chi(m)). The support must lie within mollifier_cutoff(p).
cplx mollifier(const Character& chi, const WeightVector& w);

struct MomentReport {
  std::uint64_t p = 0;
  double x = 0.0;
  std::string weight_desc;
  std::uint64_t cutoff = 0;
  cplx m1;
  double m2 = 0.0;
  double m4_direct = 0.0;
  double m4_identity = 0.0;  ///< (p-1)/2 * E(cutoff, w)
  std::uint64_t m0 = 0;      ///< even chi with |theta| > threshold
  std::uint64_t undetermined = 0;
  double m1_diagonal = 0.0;  ///< (p-1)/2 sum_m w(m) e^{-pi m^2 x / p}
  double holder_rhs = 0.0;   ///< M2^{1/2} M4^{1/4} (M0 + undetermined)^{1/4}
  double holder_slack = 0.0; ///< holder_rhs - |M1|
};

/// Moments over the even characters. Throws InvalidArgument for zero weights,
/// x <= 0, or a threshold not above every tail bound.
MomentReport moments(const CharacterTable& table, double x, const WeightVector& w, double threshold = 1e-8);

/// sum over even chi of chi(m) conj(chi(n)).
cplx orthogonality_sum(const CharacterTable& table, std::uint64_t m, std::uint64_t n);

struct NonvanishingResult {
  std::uint64_t count = 0;         ///< |theta| > threshold
  std::uint64_t undetermined = 0;  ///< |theta| <= threshold: no vanishing certificate either way
  double min_abs_nonprincipal = 0.0;
  double max_tail = 0.0;
};

NonvanishingResult nonvanishing_count(const CharacterTable& table, double x, double threshold = 1e-8);

struct LowerBoundReport {
  std::uint64_t p = 0;
  double x = 0.0;
  std::uint64_t cutoff = 0;
  unsigned k = 0;             ///< energy-optimal level at the cutoff
  double energy_ratio = 0.0;  ///< N^2 E(N, w_k) / l1^4
  double floor = 0.0;         ///< |M1|^4 / (M2^2 M4)
  std::uint64_t m0 = 0;
};

LowerBoundReport lower_bound_report(const CharacterTable& table, double x);

}  // namespace gcdlab
