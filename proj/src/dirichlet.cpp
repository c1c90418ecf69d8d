#include "gcdlab/dirichlet.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "gcdlab/arith.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/parallel.hpp"

namespace gcdlab {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t smallest_primitive_root(std::uint64_t p) {
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint64_t q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return static_cast<std::uint32_t>(g);
  }
  throw SolverFailure("no primitive root found");
}

// #{x in (lo, hi] : x = t mod p} for signed endpoints.
std::int64_t residue_count(std::int64_t lo, std::int64_t hi, std::int64_t t, std::int64_t p) {
  const auto fl = [p](std::int64_t x) { return x >= 0 ? x / p : -((-x + p - 1) / p); };
  return fl(hi - t) - fl(lo - t);
}

}  // namespace

CharacterTable::CharacterTable(std::uint64_t p) {
  if (p < 3 || p >= (std::uint64_t{1} << 31) || !is_prime(p)) throw InvalidArgument("modulus must be an odd prime");
  p_ = static_cast<std::uint32_t>(p);
  g_ = smallest_primitive_root(p);
  dlog_.assign(p_, 0);
  std::uint64_t x = 1;
  for (std::uint32_t j = 0; j < p_ - 1; ++j) {
    dlog_[x] = j;
    x = x * g_ % p_;
  }
  roots_.resize(p_ - 1);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(p_ - 1);
  for (std::uint32_t j = 0; j < p_ - 1; ++j) roots_[j] = std::polar(1.0, step * j);
}

CharacterTable build_table(std::uint64_t p) { return CharacterTable(p); }

Character::Character(const CharacterTable& table, std::uint32_t index) : table_(&table), a_(index) {
  if (index >= table.order()) throw InvalidArgument("character index out of range");
}

Character Character::conj() const { return Character(*table_, (table_->order() - a_) % table_->order()); }

cplx char_sum(const Character& chi, std::uint64_t m, std::uint64_t n) {
  const std::uint64_t p = chi.table().p();
  const std::uint64_t periods = n / p;
  cplx s = chi.is_principal() ? cplx(static_cast<double>(periods * (p - 1)), 0.0) : cplx{};
  for (std::uint64_t k = m + periods * p + 1; k <= m + n; ++k) s += chi(k);
  return s;
}

WeilMoment weil_moment_check(const Character& chi, std::uint32_t b, unsigned r) {
  if (chi.is_principal()) throw InvalidArgument("Weil moments need a nonprincipal character");
  if (b == 0 || r < 2) throw InvalidArgument("Weil moments need B >= 1 and r >= 2");
  const std::uint64_t p = chi.table().p();
  std::vector<double> terms(p);
  cplx window{};
  for (std::uint64_t k = 1; k <= b; ++k) window += chi(1 + k);  // u = 1
  for (std::uint64_t u = 1; u <= p; ++u) {
    if (u > 1) window += chi(u + b) - chi(u);
    terms[u - 1] = std::pow(std::norm(window), static_cast<double>(r));
  }
  WeilMoment out;
  out.lhs = pairwise_sum(terms);
  const double dr = r, db = b, dp = static_cast<double>(p);
  out.rhs = std::pow(2.0 * dr, dr) * std::pow(db, dr) * dp + 2.0 * dr * std::pow(db, 2.0 * dr) * std::sqrt(dp);
  return out;
}

std::uint64_t congruence_count(std::uint64_t p, std::uint64_t a1, std::uint64_t a2, std::uint64_t m,
                               std::uint64_t n) {
  if (!is_prime(p) || a1 == 0 || a2 == 0 || a1 >= p || a2 >= p) throw InvalidArgument("need prime p, 1 <= a < p");
  const std::uint64_t c = mul_mod(a2, inv_mod_prime(a1, p), p);  // n1 = c n2
  std::uint64_t total = 0;
  const auto lo = static_cast<std::int64_t>(m), hi = static_cast<std::int64_t>(m + n);
  for (std::uint64_t n2 = m + 1; n2 <= m + n; ++n2) {
    const auto t = static_cast<std::int64_t>(mul_mod(c, n2 % p, p));
    total += static_cast<std::uint64_t>(residue_count(lo, hi, t, static_cast<std::int64_t>(p)));
  }
  return total;
}

WeightedCongruence weighted_congruence_count(std::uint64_t p, const WeightVector& w, std::uint64_t m,
                                             std::uint64_t n) {
  const std::uint64_t a = w.limit();
  if (a == 0 || w.is_zero()) throw InvalidArgument("weighted congruence count needs nonzero weights");
  if (a > n || a * n > p) throw DomainError("hypotheses A <= N and A N <= p violated");
  const auto supp = w.support();
  std::vector<double> rows(supp.size());
  const auto count = static_cast<std::ptrdiff_t>(supp.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::uint32_t a1 = supp[static_cast<std::size_t>(i)];
    double s = 0.0;
    for (std::uint32_t a2 : supp) s += w(a2) * static_cast<double>(congruence_count(p, a1, a2, m, n));
    rows[static_cast<std::size_t>(i)] = w(a1) * s;
  }
  WeightedCongruence out;
  out.t_w = pairwise_sum(rows);
  const FactorSieve sieve(a);
  const double l1 = w.l1_norm();
  out.majorant = l1 * l1 + static_cast<double>(n) * gcd_quadratic_form(w, GcdKernel::T0, sieve, GcdEvaluator::Direct);
  out.ratio = out.t_w / out.majorant;
  return out;
}

LatticeCount lattice_count(std::uint64_t p, std::uint64_t a1, std::uint64_t a2, std::uint64_t n) {
  if (!is_prime(p) || a1 % p == 0 || a2 % p == 0) throw InvalidArgument("lattice count needs (a1 a2, p) = 1");
  // a1 n1 = a2 n2  <=>  n2 = c n1 with c = a1 / a2 mod p
  const std::uint64_t c = mul_mod(a1 % p, inv_mod_prime(a2 % p, p), p);
  const auto root = static_cast<std::int64_t>(isqrt(n));
  const auto sp = static_cast<std::int64_t>(p);
  std::uint64_t count = 0;
  for (std::int64_t n1 = -root; n1 <= root; ++n1) {
    const auto rest = static_cast<std::int64_t>(isqrt(n - static_cast<std::uint64_t>(n1 * n1)));
    const std::int64_t t = static_cast<std::int64_t>(mul_mod(c, static_cast<std::uint64_t>(((n1 % sp) + sp) % sp), p));
    count += static_cast<std::uint64_t>(residue_count(-rest - 1, rest, t, sp));
  }
  LatticeCount out;
  out.count = count;
  const double g = static_cast<double>(gcd(a1, a2)), s = static_cast<double>(a1 + a2);
  const double dn = static_cast<double>(n), dp = static_cast<double>(p), rn = std::sqrt(dn);
  out.shape_bound = 1.0 + dn / dp + rn * s / (dp * g) + rn * g / s;
  out.ratio = static_cast<double>(count) / out.shape_bound;
  return out;
}

double burgess_envelope(double n, double p, unsigned r, double t0max) {
  if (r < 1 || !(n > 0.0) || !(p > 0.0) || !(t0max > 0.0)) throw InvalidArgument("bad envelope arguments");
  const double dr = r;
  return std::pow(n, 1.0 - 1.0 / dr) * std::pow(p, (dr + 1.0) / (4.0 * dr * dr)) * std::pow(t0max, 1.0 / (2.0 * dr));
}

BurgessParams burgess_params(std::uint64_t p, std::uint64_t n, unsigned r) {
  const double root = std::pow(static_cast<double>(p), 1.0 / (2.0 * r));
  return {static_cast<std::uint64_t>(std::floor(static_cast<double>(n) / (16.0 * r * root))),
          static_cast<std::uint64_t>(std::floor(r * root))};
}

BurgessReport burgess_scan(const CharacterTable& table, std::uint64_t n, unsigned r, double t0max,
                           std::uint64_t stride) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t p = table.p();
  if (r < 2) throw DomainError("Burgess scan needs r >= 2");
  const double limit = std::pow(static_cast<double>(p), 0.5 + 1.0 / (4.0 * r));
  if (n == 0 || static_cast<double>(n) > limit * (1.0 + 1e-12)) throw DomainError("N exceeds p^{1/2 + 1/(4r)}");

  const std::uint32_t chars = table.order();
  std::vector<double> best(chars, 0.0);
  std::vector<std::uint64_t> best_m(chars, 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t sa = 1; sa < static_cast<std::int64_t>(chars); ++sa) {
    const Character chi(table, static_cast<std::uint32_t>(sa));
    std::vector<cplx> prefix(p + n + 1);
    for (std::uint64_t k = 1; k <= p + n; ++k) prefix[k] = prefix[k - 1] + chi(k);
    const std::uint64_t step = stride == 0 ? 1 : stride;
    double mx = -1.0;
    std::uint64_t arg = 0;
    for (std::uint64_t m = 0; m < p; m += step) {
      const double v = std::abs(prefix[m + n] - prefix[m]);
      if (v > mx) {
        mx = v;
        arg = m;
      }
    }
    best[static_cast<std::size_t>(sa)] = mx;
    best_m[static_cast<std::size_t>(sa)] = arg;
  }
  BurgessReport rep;
  rep.p = p;
  rep.r = r;
  rep.n = n;
  rep.params = burgess_params(p, n, r);
  for (std::uint32_t a = 1; a < chars; ++a)
    if (best[a] > rep.max_s) {
      rep.max_s = best[a];
      rep.argmax_chi = a;
      rep.argmax_m = best_m[a];
    }
  rep.t0max = t0max;
  rep.envelope = burgess_envelope(static_cast<double>(n), static_cast<double>(p), r, t0max);
  rep.ratio = rep.max_s / rep.envelope;
  rep.pv_ratio = rep.max_s / (std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p)));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace gcdlab
