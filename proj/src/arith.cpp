#include "gcdlab/arith.hpp"

#include <bit>
#include <cmath>

#include "gcdlab/errors.hpp"

namespace gcdlab {

FactorSieve::FactorSieve(std::uint64_t limit) {
  if (limit == 0) throw InvalidArgument("sieve limit must be >= 1");
  if (limit >= (std::uint64_t{1} << 32)) throw InvalidArgument("sieve limit must be < 2^32");
  limit_ = static_cast<std::uint32_t>(limit);

  omega_.assign(limit + 1, 0);
  spf_.assign(limit + 1, 0);
  phi_.assign(limit + 1, 0);
  phi_[1] = 1;

  std::vector<std::uint32_t> primes;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (spf_[n] == 0) {
      spf_[n] = static_cast<std::uint32_t>(n);
      phi_[n] = static_cast<std::uint32_t>(n - 1);
      omega_[n] = 1;
      primes.push_back(static_cast<std::uint32_t>(n));
    }
    for (std::uint32_t q : primes) {
      const std::uint64_t m = n * q;
      if (q > spf_[n] || m > limit) break;
      spf_[m] = q;
      omega_[m] = static_cast<std::uint8_t>(omega_[n] + 1);
      phi_[m] = (q == spf_[n]) ? phi_[n] * q : phi_[n] * (q - 1);
    }
  }
}

unsigned FactorSieve::max_omega(std::uint64_t n) noexcept {
  return n == 0 ? 0u : static_cast<unsigned>(std::bit_width(n) - 1);
}

std::vector<std::uint32_t> FactorSieve::distinct_primes(std::uint32_t n) const {
  std::vector<std::uint32_t> out;
  while (n > 1) {
    const std::uint32_t q = spf_[n];
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  return out;
}

FactorSieve build_sieve(std::uint64_t limit) { return FactorSieve(limit); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) noexcept {
  return pow_mod(a % p, p - 2, p);
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a known deterministic witness set for n < 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    const std::uint64_t base = a % n;
    if (base == 0) continue;
    std::uint64_t x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace gcdlab
