#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace gcdlab {

__extension__ typedef unsigned __int128 u128;

/// Omega (prime factors with multiplicity), smallest prime factor and Euler
/// phi for every n <= limit, filled by one linear sieve pass.
///
/// Immutable after construction; concurrent reads are safe.
class FactorSieve {
 public:
  /// Throws InvalidArgument for limit == 0 or limit >= 2^32.
  explicit FactorSieve(std::uint64_t limit);

  std::uint32_t limit() const noexcept { return limit_; }

  /// Valid for 1 <= n <= limit.
  unsigned omega(std::uint32_t n) const noexcept { return omega_[n]; }
  /// Valid for 2 <= n <= limit.
  std::uint32_t spf(std::uint32_t n) const noexcept { return spf_[n]; }
  std::uint32_t phi(std::uint32_t n) const noexcept { return phi_[n]; }

  /// Index 0 is a placeholder; entry n is Omega(n).
  std::span<const std::uint8_t> omega_table() const noexcept { return omega_; }

  /// Largest Omega(m) over 1 <= m <= n (attained at a power of two).
  static unsigned max_omega(std::uint64_t n) noexcept;

  /// Distinct prime divisors of n (n <= limit), ascending.
  std::vector<std::uint32_t> distinct_primes(std::uint32_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> phi_;
};

FactorSieve build_sieve(std::uint64_t limit);

constexpr std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  return std::gcd(a, b);
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// floor(sqrt(n)) in exact integer arithmetic.
std::uint64_t isqrt(std::uint64_t n) noexcept;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;
/// Inverse of a modulo prime p (a not divisible by p).
std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) noexcept;

}  // namespace gcdlab
