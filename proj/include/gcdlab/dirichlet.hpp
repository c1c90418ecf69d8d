#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gcdlab/weights.hpp"

namespace gcdlab {

using cplx = std::complex<double>;

/// Discrete logarithms to the smallest primitive root g mod an odd prime p,
/// plus the (p-1)-th roots of unity.
class CharacterTable {
 public:
  /// Throws InvalidArgument unless p is a prime >= 3 below 2^31.
  explicit CharacterTable(std::uint64_t p);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t order() const noexcept { return p_ - 1; }
  std::uint32_t generator() const noexcept { return g_; }
  /// g^dlog(n) = n mod p, for 1 <= n < p.
  std::uint32_t dlog(std::uint32_t n) const noexcept { return dlog_[n]; }
  cplx root(std::uint64_t j) const noexcept { return roots_[j % order()]; }

 private:
  std::uint32_t p_;
  std::uint32_t g_;
  std::vector<std::uint32_t> dlog_;
  std::vector<cplx> roots_;
};

CharacterTable build_table(std::uint64_t p);

/// chi_a(n) = e(a dlog(n) / (p-1)) for p not dividing n, else 0.
class Character {
 public:
  Character(const CharacterTable& table, std::uint32_t index);

  const CharacterTable& table() const noexcept { return *table_; }
  std::uint32_t index() const noexcept { return a_; }
  bool is_principal() const noexcept { return a_ == 0; }
  bool is_even() const noexcept { return a_ % 2 == 0; }
  Character conj() const;

  cplx operator()(std::uint64_t n) const noexcept {
    const std::uint64_t r = n % table_->p();
    if (r == 0) return {0.0, 0.0};
    return table_->root(std::uint64_t{a_} * table_->dlog(static_cast<std::uint32_t>(r)));
  }

 private:
  const CharacterTable* table_;
  std::uint32_t a_;
};

/// S(M, N) = sum_{M < n <= M + N} chi(n).
cplx char_sum(const Character& chi, std::uint64_t m, std::uint64_t n);

struct WeilMoment {
  double lhs = 0.0;  ///< sum_{u=1}^{p} |sum_{b<=B} chi(u+b)|^{2r}
  double rhs = 0.0;  ///< (2r)^r B^r p + 2r B^{2r} sqrt(p)
};

/// Throws InvalidArgument for principal chi, B = 0 or r < 2.
WeilMoment weil_moment_check(const Character& chi, std::uint32_t b, unsigned r);

/// #{M < n1, n2 <= M + N : a1 n1 = a2 n2 mod p}, 1 <= a1, a2 < p.
std::uint64_t congruence_count(std::uint64_t p, std::uint64_t a1, std::uint64_t a2, std::uint64_t m,
                               std::uint64_t n);

struct WeightedCongruence {
  double t_w = 0.0;
  double majorant = 0.0;  ///< l1(w)^2 + N * sum w w (a1,a2)/(a1+a2)
  double ratio = 0.0;     ///< t_w / majorant
};

/// sum_{a1,a2 <= A} w(a1) w(a2) T(a1, a2; M, N), A = w.limit().
/// Throws DomainError unless A <= N and A N <= p.
WeightedCongruence weighted_congruence_count(std::uint64_t p, const WeightVector& w, std::uint64_t m,
                                             std::uint64_t n);

struct LatticeCount {
  std::uint64_t count = 0;
  double shape_bound = 0.0;  ///< 1 + n/p + sqrt(n)(a1+a2)/(p (a1,a2)) + sqrt(n)(a1,a2)/(a1+a2)
  double ratio = 0.0;        ///< count / shape_bound
};

/// Integer points (n1, n2) with n1^2 + n2^2 <= n and a1 n1 = a2 n2 mod p.
/// Throws InvalidArgument when p divides a1 a2.
LatticeCount lattice_count(std::uint64_t p, std::uint64_t a1, std::uint64_t a2, std::uint64_t n);

/// N^{1-1/r} p^{(r+1)/(4r^2)} t0max^{1/(2r)}.
double burgess_envelope(double n, double p, unsigned r, double t0max);

struct BurgessParams {
  std::uint64_t a = 0;  ///< floor(N / (16 r p^{1/(2r)}))
  std::uint64_t b = 0;  ///< floor(r p^{1/(2r)})
};

BurgessParams burgess_params(std::uint64_t p, std::uint64_t n, unsigned r);

struct BurgessReport {
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t n = 0;
  BurgessParams params;
  double max_s = 0.0;
  std::uint32_t argmax_chi = 0;
  std::uint64_t argmax_m = 0;
  double t0max = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;     ///< max_s / envelope
  double pv_ratio = 0.0;  ///< max_s / (sqrt(p) log p)
  double seconds = 0.0;
};

/// Max of |S_chi(M, N)| over nonprincipal chi and over M. With stride 0
/// every M in [0, p) is scanned through per-character prefix sums; otherwise
/// M runs over multiples of stride. Throws DomainError for r < 2 or
/// N > p^{1/2 + 1/(4r)}.
BurgessReport burgess_scan(const CharacterTable& table, std::uint64_t n, unsigned r, double t0max,
                           std::uint64_t stride = 0);

}  // namespace gcdlab
