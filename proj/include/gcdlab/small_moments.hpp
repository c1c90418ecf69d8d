#pragma once

#include <cstdint>
#include <vector>

#include "gcdlab/dirichlet.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab {

struct HolderExponents {
  double r = 0.0;
  double alpha = 0.0;  ///< r / (4 - 2r)
  double beta = 0.0;   ///< (8 - 6r) / (8 - 4r)
  double hp = 0.0;     ///< 4 - 2r
  double hq = 0.0;     ///< (8 - 4r) / (4 - 3r)

  /// Throws InvalidArgument unless 4/3 < r < 2.
  static HolderExponents for_r(double r);
};

/// S_chi(N) = sum_{n <= N} chi(n) for every character index 0 .. p-2.
std::vector<cplx> initial_sums(const CharacterTable& table, std::uint64_t n);

/// (1/(p-1)) sum over the p-2 nonprincipal chi of |S_chi(N)|^k. N < p, k > 0.
double char_moment(const CharacterTable& table, std::uint64_t n, double k);

/// (1/(p-1)) sum over nonprincipal chi of |sum_m w(m) conj(chi(m))|^4.
/// Throws DomainError unless N^2 < p, N = w.limit().
double mollified_fourth(const CharacterTable& table, const WeightVector& w);

struct HolderChainReport {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  double r = 0.0;
  double s1 = 0.0, s2 = 0.0, sr = 0.0, m4 = 0.0;
  double lhs = 0.0;          ///< (1/(p-1)) |sum_{chi != chi0} S_chi(N) M_chi(N)|
  double lhs_closed = 0.0;   ///< l1(w) (1 - N/(p-1))
  double rhs = 0.0;          ///< Sr^{1/(4-2r)} S2^{(4-3r)/(8-4r)} M4^{1/4}
  double slack = 0.0;        ///< rhs - lhs
  double lower_bound = 0.0;  ///< N^{r/2} / (N^2 E(N,w) / l1^4)^{1 - r/2}
  bool within_hypothesis = false;  ///< N^2 < p
};

/// N = w.limit() < p. Throws InvalidArgument for r outside (4/3, 2) or zero weights.
HolderChainReport holder_chain_check(const CharacterTable& table, double r, const WeightVector& w);

}  // namespace gcdlab
