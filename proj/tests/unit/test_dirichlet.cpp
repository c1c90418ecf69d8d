#include <doctest.h>

#include <cmath>
#include <random>

#include "gcdlab/arith.hpp"
#include "gcdlab/dirichlet.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/reference.hpp"
#include "oracles.hpp"

using namespace gcdlab;

namespace {

std::vector<std::uint64_t> odd_primes(std::uint64_t up_to) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= up_to; ++p)
    if (oracle::prime(p)) out.push_back(p);
  return out;
}

std::uint64_t brute_congruence(std::uint64_t p, std::uint64_t a1, std::uint64_t a2, std::uint64_t m, std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t n1 = m + 1; n1 <= m + n; ++n1)
    for (std::uint64_t n2 = m + 1; n2 <= m + n; ++n2) c += (a1 * n1) % p == (a2 * n2) % p;
  return c;
}

}  // namespace

TEST_SUITE("dirichlet") {
  TEST_CASE("tables") {
    const CharacterTable t5(5);
    CHECK(t5.generator() == 2);
    CHECK(t5.dlog(1) == 0);
    CHECK(t5.dlog(2) == 1);
    CHECK(t5.dlog(4) == 2);
    CHECK(t5.dlog(3) == 3);
    CHECK(CharacterTable(3).generator() == 2);
    CHECK(CharacterTable(7).generator() == 3);
    for (std::uint64_t p : odd_primes(400)) {
      const CharacterTable t(p);
      const oracle::Chars o(p);
      REQUIRE(t.generator() == o.g);
      std::vector<int> seen(p - 1, 0);
      for (std::uint32_t n = 1; n < p; ++n) {
        REQUIRE(t.dlog(n) == o.log[n]);
        ++seen[t.dlog(n)];
      }
      for (int s : seen) REQUIRE(s == 1);
      REQUIRE(t.dlog(t.generator()) == 1);
    }
    CHECK_THROWS_AS(CharacterTable(9), InvalidArgument);
    CHECK_THROWS_AS(CharacterTable(2), InvalidArgument);
    CHECK_THROWS_AS(Character(t5, 4), InvalidArgument);
  }

  TEST_CASE("characters match the oracle and are multiplicative") {
    for (std::uint64_t p : odd_primes(61)) {
      const CharacterTable t(p);
      const oracle::Chars o(p);
      for (std::uint32_t a = 0; a < p - 1; ++a) {
        const Character chi(t, a);
        for (std::uint64_t m = 0; m < 2 * p; ++m) {
          REQUIRE(std::abs(chi(m) - o(a, m)) < 1e-12);
          if (m % p != 0) REQUIRE(std::abs(std::abs(chi(m)) - 1.0) < 1e-12);
          for (std::uint64_t n = 0; n < p; ++n) REQUIRE(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12);
        }
        REQUIRE(std::abs(chi.conj()(2) - std::conj(chi(2))) < 1e-12);
        REQUIRE(chi.is_principal() == (a == 0));
      }
    }
  }

  TEST_CASE("orthogonality over the full group") {
    for (std::uint64_t p : odd_primes(101)) {
      const CharacterTable t(p);
      for (std::uint64_t m = 1; m <= p; ++m)
        for (std::uint64_t n = 1; n <= p; ++n) {
          cplx s{};
          for (std::uint32_t a = 0; a < p - 1; ++a) {
            const Character chi(t, a);
            s += chi(m) * std::conj(chi(n));
          }
          const double expected = (m % p == n % p && m % p != 0) ? static_cast<double>(p - 1) : 0.0;
          REQUIRE(std::abs(s - expected) < 1e-6 * static_cast<double>(p));
        }
    }
  }

  TEST_CASE("even characters") {
    for (std::uint64_t p : odd_primes(101)) {
      const CharacterTable t(p);
      for (std::uint32_t a = 0; a < p - 1; ++a) {
        const Character chi(t, a);
        const bool even = std::abs(chi(p - 1) - 1.0) < 1e-9;
        REQUIRE(even == (a % 2 == 0));
        REQUIRE(chi.is_even() == even);
      }
    }
  }

  TEST_CASE("character sums") {
    const CharacterTable t5(5);
    const Character legendre(t5, 2);
    CHECK(std::abs(char_sum(legendre, 0, 3) - (-1.0)) < 1e-12);
    CHECK(std::abs(char_sum(legendre, 0, 4)) < 1e-12);
    for (std::uint64_t p : {13ULL, 101ULL, 499ULL}) {
      const CharacterTable t(p);
      std::mt19937_64 rng(p);
      for (std::uint32_t a = 1; a < p - 1; a += 7) {
        const Character chi(t, a);
        CHECK(std::abs(char_sum(chi, rng() % 1000, p)) < 1e-9);
        const std::uint64_t m = rng() % 5000, n = 1 + rng() % (3 * p);
        cplx direct{};
        for (std::uint64_t k = m + 1; k <= m + n; ++k) direct += chi(k);
        CHECK(std::abs(char_sum(chi, m, n) - direct) < 1e-9);
      }
      CHECK(std::abs(char_sum(Character(t, 0), 0, p) - static_cast<double>(p - 1)) < 1e-9);
    }
  }

  TEST_CASE("Weil moments examples") {
    const CharacterTable t5(5);
    const WeilMoment w = weil_moment_check(Character(t5, 2), 2, 2);
    CHECK(w.lhs == doctest::Approx(18.0));
    CHECK(w.rhs == doctest::Approx(320.0 + 64.0 * std::sqrt(5.0)));
    for (std::uint64_t p : {5ULL, 13ULL, 29ULL}) {
      const CharacterTable t(p);
      for (unsigned r : {2u, 3u}) {
        const WeilMoment b1 = weil_moment_check(Character(t, 1), 1, r);
        CHECK(b1.lhs == doctest::Approx(static_cast<double>(p - 1)));
        CHECK(b1.lhs <= b1.rhs);
      }
    }
    const CharacterTable t7(7);
    const Character chi(t7, 1);
    double expanded = 0.0;
    for (std::uint64_t u = 1; u <= 7; ++u) {
      cplx s{};
      for (std::uint64_t b1 = 1; b1 <= 2; ++b1)
        for (std::uint64_t b2 = 1; b2 <= 2; ++b2)
          for (std::uint64_t b3 = 1; b3 <= 2; ++b3)
            for (std::uint64_t b4 = 1; b4 <= 2; ++b4)
              s += chi(u + b1) * chi(u + b2) * std::conj(chi(u + b3)) * std::conj(chi(u + b4));
      expanded += s.real();
    }
    CHECK(weil_moment_check(chi, 2, 2).lhs == doctest::Approx(expanded).epsilon(1e-12));
    CHECK_THROWS_AS(weil_moment_check(Character(t7, 0), 2, 2), InvalidArgument);
    CHECK_THROWS_AS(weil_moment_check(chi, 0, 2), InvalidArgument);
    CHECK_THROWS_AS(weil_moment_check(chi, 2, 1), InvalidArgument);
  }

  TEST_CASE("Weil moment inequality to p = 61") {
    for (std::uint64_t p : odd_primes(61)) {
      const CharacterTable t(p);
      for (std::uint32_t a = 1; a < p - 1; ++a)
        for (std::uint32_t b = 1; b <= 8; ++b)
          for (unsigned r : {2u, 3u}) {
            const WeilMoment w = weil_moment_check(Character(t, a), b, r);
            const double rhs = std::pow(2.0 * r, r) * std::pow(b, r) * p + 2.0 * r * std::pow(b, 2.0 * r) * std::sqrt(p);
            REQUIRE(w.rhs == doctest::Approx(rhs).epsilon(1e-12));
            REQUIRE(w.lhs <= w.rhs);
          }
    }
  }

  TEST_CASE("congruence counts") {
    CHECK(congruence_count(7, 1, 2, 0, 6) == 6);
    CHECK(congruence_count(7, 1, 3, 0, 3) == 2);
    CHECK(congruence_count(101, 5, 5, 3, 40) == 40);
    for (std::uint64_t p : {7ULL, 31ULL, 101ULL})
      for (std::uint64_t a1 = 1; a1 < std::min<std::uint64_t>(p, 12); ++a1)
        for (std::uint64_t a2 = 1; a2 < std::min<std::uint64_t>(p, 12); ++a2)
          for (std::uint64_t m : {0ULL, 5ULL, 250ULL})
            for (std::uint64_t n : {std::uint64_t{1}, std::uint64_t{9}, std::uint64_t{p - 1}, std::uint64_t{p + 3}})
              REQUIRE(congruence_count(p, a1, a2, m, n) == brute_congruence(p, a1, a2, m, n));
    CHECK_THROWS_AS(congruence_count(7, 0, 1, 0, 3), InvalidArgument);
  }

  TEST_CASE("weighted congruence counts") {
    const WeightedCongruence one = weighted_congruence_count(101, all_ones(1), 0, 10);
    CHECK(one.t_w == 10.0);
    CHECK(std::isfinite(one.ratio));
    CHECK(one.majorant == doctest::Approx(1.0 + 10.0 * 0.5));
    const WeightedCongruence three = weighted_congruence_count(101, all_ones(3), 0, 10);
    double brute = 0.0;
    for (std::uint64_t a1 = 1; a1 <= 3; ++a1)
      for (std::uint64_t a2 = 1; a2 <= 3; ++a2) brute += static_cast<double>(brute_congruence(101, a1, a2, 0, 10));
    CHECK(three.t_w == brute);
    const FactorSieve s(10);
    CHECK(three.majorant == doctest::Approx(9.0 + 10.0 * gcd_quadratic_form(all_ones(3), GcdKernel::T0, s)));
    std::mt19937_64 rng(43);
    for (std::uint64_t p : {53ULL, 97ULL, 101ULL}) {
      for (int trial = 0; trial < 10; ++trial) {
        const std::uint64_t n = 2 + rng() % 9, a = 1 + rng() % std::min<std::uint64_t>(n, p / n);
        std::vector<double> v(a);
        for (double& x : v) x = static_cast<double>(rng() % 4);
        const WeightVector w(v, "r");
        if (w.is_zero()) continue;
        const std::uint64_t m = rng() % 200;
        double truth = 0.0;
        for (std::uint64_t a1 = 1; a1 <= a; ++a1)
          for (std::uint64_t a2 = 1; a2 <= a; ++a2) {
            std::uint64_t c = 0;
            for (std::uint64_t n1 = m + 1; n1 <= m + n; ++n1)
              for (std::uint64_t n2 = m + 1; n2 <= m + n; ++n2) c += (a1 * n1) % p == (a2 * n2) % p;
            truth += w(static_cast<std::uint32_t>(a1)) * w(static_cast<std::uint32_t>(a2)) * static_cast<double>(c);
          }
        CHECK(weighted_congruence_count(p, w, m, n).t_w == doctest::Approx(truth));
        std::vector<double> rev(v.rbegin(), v.rend());
        if (a == 2) CHECK(weighted_congruence_count(p, WeightVector(rev, "rev"), m, n).t_w == doctest::Approx(truth));
      }
    }
    CHECK_THROWS_AS(weighted_congruence_count(101, all_ones(11), 0, 10), DomainError);
    CHECK_THROWS_AS(weighted_congruence_count(101, all_ones(10), 0, 20), DomainError);
  }

  TEST_CASE("lattice counts") {
    CHECK(lattice_count(7, 1, 1, 0).count == 1);
    CHECK(lattice_count(7, 1, 1, 2).count == 3);
    for (std::uint64_t p : {7ULL, 13ULL, 31ULL})
      for (std::uint64_t a1 = 1; a1 < p; a1 += 2)
        for (std::uint64_t a2 = 1; a2 < p; a2 += 3)
          for (std::uint64_t n : {0ULL, 5ULL, 50ULL, 400ULL}) {
            std::uint64_t brute = 0;
            const auto lim = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
            const auto ip = static_cast<std::int64_t>(p);
            for (std::int64_t x = -lim; x <= lim; ++x)
              for (std::int64_t y = -lim; y <= lim; ++y)
                if (x * x + y * y <= static_cast<std::int64_t>(n) &&
                    ((static_cast<std::int64_t>(a1) * x - static_cast<std::int64_t>(a2) * y) % ip + ip) % ip == 0)
                  ++brute;
            const LatticeCount lc = lattice_count(p, a1, a2, n);
            REQUIRE(lc.count == brute);
            REQUIRE(lattice_count(p, a2, a1, n).count == brute);
            REQUIRE(lc.ratio == doctest::Approx(static_cast<double>(brute) / lc.shape_bound));
          }
    CHECK_THROWS_AS(lattice_count(7, 7, 1, 3), InvalidArgument);
  }

  TEST_CASE("Burgess envelope and parameters") {
    CHECK(burgess_envelope(100, 10007, 2, 1.0) < burgess_envelope(100, 10007, 2, 2.0));
    CHECK(burgess_envelope(100, 10007, 2, 4.0) ==
          doctest::Approx(std::pow(100.0, 0.5) * std::pow(10007.0, 3.0 / 16.0) * std::pow(4.0, 0.25)));
    const BurgessParams bp = burgess_params(10007, 158, 2);
    CHECK(bp.a == static_cast<std::uint64_t>(std::floor(158.0 / (32.0 * std::pow(10007.0, 0.25)))));
    CHECK(bp.b == static_cast<std::uint64_t>(std::floor(2.0 * std::pow(10007.0, 0.25))));
  }

  TEST_CASE("Burgess scan against the term-by-term reference") {
    for (std::uint64_t p : {101ULL, 211ULL}) {
      const CharacterTable t(p);
      const std::uint64_t n = 12;
      const BurgessReport full = burgess_scan(t, n, 2, 1.0, 0);
      CHECK(full.max_s == doctest::Approx(reference::burgess_max(t, n, 1)).epsilon(1e-12));
      const BurgessReport strided = burgess_scan(t, n, 2, 1.0, 7);
      CHECK(strided.max_s == doctest::Approx(reference::burgess_max(t, n, 7)).epsilon(1e-12));
      CHECK(strided.max_s <= full.max_s + 1e-12);
      const Character chi(t, full.argmax_chi);
      CHECK(std::abs(char_sum(chi, full.argmax_m, n)) == doctest::Approx(full.max_s).epsilon(1e-12));
      CHECK(full.ratio == doctest::Approx(full.max_s / full.envelope));
      CHECK(full.pv_ratio == doctest::Approx(full.max_s / (std::sqrt(double(p)) * std::log(double(p)))));
      CHECK(full.envelope == doctest::Approx(burgess_envelope(n, p, 2, 1.0)));
    }
    const CharacterTable t(101);
    CHECK_THROWS_AS(burgess_scan(t, 18, 2, 1.0), DomainError);
    CHECK_THROWS_AS(burgess_scan(t, 10, 1, 1.0), DomainError);
  }
}
