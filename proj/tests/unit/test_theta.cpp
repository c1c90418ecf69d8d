#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcdlab/arith.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/reference.hpp"
#include "gcdlab/theta.hpp"
#include "oracles.hpp"

using namespace gcdlab;

namespace {

std::vector<std::uint64_t> odd_primes(std::uint64_t up_to) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= up_to; ++p)
    if (oracle::prime(p)) out.push_back(p);
  return out;
}

/// Term-by-term theta from the oracle characters, 400 terms past sqrt(p).
std::complex<double> theta_oracle(const oracle::Chars& o, std::uint64_t a, double x) {
  std::complex<double> s{};
  const auto terms = static_cast<std::uint64_t>(40.0 * std::sqrt(static_cast<double>(o.p) / x)) + 400;
  for (std::uint64_t n = 1; n <= terms; ++n)
    s += o(a, n) * std::exp(-std::numbers::pi * static_cast<double>(n * n) * x / static_cast<double>(o.p));
  return s;
}

}  // namespace

TEST_SUITE("theta") {
  TEST_CASE("even characters") {
    CHECK(even_characters(CharacterTable(5)).size() == 2);
    CHECK(even_characters(CharacterTable(7)).size() == 3);
    for (std::uint64_t p : odd_primes(101)) {
      const CharacterTable t(p);
      const auto chars = even_characters(t);
      REQUIRE(chars.size() == (p - 1) / 2);
      CHECK(chars.front().is_principal());
      for (const Character& chi : chars) REQUIRE(std::abs(chi(p - 1) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("theta values") {
    const CharacterTable t5(5);
    const ThetaValue leg = theta(Character(t5, 2), 1.0);
    CHECK(leg.value.real() == doctest::Approx(0.44893).epsilon(1e-4 / 0.44893));
    CHECK(std::abs(leg.value.imag()) <= 1e-15);
    CHECK(leg.value.real() == doctest::Approx(theta_oracle(oracle::Chars(5), 2, 1.0).real()).epsilon(1e-14));
    for (std::uint64_t p : {5ULL, 13ULL, 101ULL, 1009ULL}) {
      const CharacterTable t(p);
      const oracle::Chars o(p);
      for (double x : {0.25, 1.0, 3.0}) {
        const ThetaValue principal = theta(Character(t, 0), x);
        CHECK(principal.value.real() > 0.0);
        CHECK(std::abs(principal.value.imag()) < 1e-15);
        CHECK(principal.n_max >= static_cast<std::uint64_t>(std::ceil(std::sqrt(p / x))));
        CHECK(principal.tail_bound < 1e-15 * std::max(1.0, std::abs(principal.value)));
        for (std::uint32_t a = 2; a < p - 1; a += 2 * (1 + p / 40)) {
          const ThetaValue v = theta(Character(t, a), x);
          REQUIRE(std::abs(v.value - theta_oracle(o, a, x)) < 1e-12);
          const ThetaValue c = theta(Character(t, static_cast<std::uint32_t>((p - 1 - a) % (p - 1))), x);
          REQUIRE(std::abs(c.value - std::conj(v.value)) < 1e-12);
        }
        const ThetaValue real_char = theta(Character(t, (p - 1) / 2), x);
        CHECK(std::abs(real_char.value.imag()) < 1e-12);
      }
    }
    CHECK_THROWS_AS(theta(Character(t5, 0), 0.0), InvalidArgument);
  }

  TEST_CASE("shared-table evaluation matches per-character evaluation") {
    for (std::uint64_t p : {13ULL, 331ULL, 2003ULL}) {
      const CharacterTable t(p);
      const auto all = theta_even(t, 1.0);
      const auto ref = reference::theta_even(t, 1.0);
      REQUIRE(all.size() == ref.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(std::abs(all[i].value - ref[i]) < 1e-12);
        CHECK(all[i].value == theta(Character(t, all[i].index), 1.0).value);
      }
    }
  }

  TEST_CASE("mollifier") {
    CHECK(mollifier_cutoff(13) == 2);
    CHECK(mollifier_cutoff(300) == 10);
    CHECK(mollifier_cutoff(299) == 9);
    for (std::uint64_t p : {13ULL, 101ULL, 1009ULL}) {
      const CharacterTable t(p);
      const auto cut = static_cast<std::uint32_t>(mollifier_cutoff(p));
      CHECK(mollifier(Character(t, 0), all_ones(cut)).real() == doctest::Approx(cut));
      for (const Character& chi : even_characters(t)) {
        CHECK(std::abs(mollifier(chi, all_ones(1)) - 1.0) < 1e-15);
        CHECK(std::abs(mollifier(chi, all_ones(cut))) <= cut + 1e-12);
      }
      CHECK_THROWS_AS(mollifier(Character(t, 0), all_ones(cut + 1)), InvalidArgument);
    }
  }

  TEST_CASE("moment examples") {
    const CharacterTable t13(13);
    const MomentReport r = moments(t13, 1.0, all_ones(2));
    CHECK(energy(all_ones(2)).integer == 6);
    CHECK(r.m4_identity == doctest::Approx(36.0));
    CHECK(r.m4_direct == doctest::Approx(36.0).epsilon(1e-12));
    CHECK(r.cutoff == 2);

    const CharacterTable t5(5);
    const MomentReport five = moments(t5, 1.0, all_ones(1));
    const cplx sum = theta(Character(t5, 0), 1.0).value + theta(Character(t5, 2), 1.0).value;
    CHECK(std::abs(five.m1 - sum) < 1e-14);
    CHECK(theta(Character(t5, 0), 1.0).value.real() > 0.0);
    CHECK(theta(Character(t5, 2), 1.0).value.real() > 0.0);
    CHECK(five.m0 == 2);
    CHECK_THROWS_AS(moments(t5, 1.0, WeightVector({0.0}, "zero")), InvalidArgument);
    CHECK_THROWS_AS(moments(t5, 1.0, all_ones(1), 1e-300), InvalidArgument);
  }

  TEST_CASE("moment identities and Holder chain to p = 101") {
    for (std::uint64_t p : odd_primes(101)) {
      const CharacterTable t(p);
      const auto cut = static_cast<std::uint32_t>(mollifier_cutoff(p));
      if (cut == 0) continue;
      const FactorSieve s(std::max<std::uint32_t>(cut, 2));
      std::vector<WeightVector> ws{all_ones(cut)};
      for (unsigned k = 0; k <= FactorSieve::max_omega(cut); ++k) {
        WeightVector w = omega_level_weights(s, cut, k);
        if (!w.is_zero()) ws.push_back(std::move(w));
      }
      for (const WeightVector& w : ws) {
        const MomentReport r = moments(t, 1.0, w);
        CHECK(r.m2 >= 0.0);
        CHECK(r.m4_direct >= 0.0);
        CHECK(r.m4_direct == doctest::Approx(r.m4_identity).epsilon(1e-9));
        CHECK(r.m1.real() >= r.m1_diagonal * (1.0 - 1e-12));
        CHECK(r.holder_slack >= -1e-9);
        CHECK(r.m0 + r.undetermined == (p - 1) / 2);
      }
    }
  }

  TEST_CASE("orthogonality over even characters") {
    const CharacterTable t5(5);
    CHECK(std::abs(orthogonality_sum(t5, 2, 3) - 2.0) < 1e-14);
    CHECK(std::abs(orthogonality_sum(t5, 2, 4)) < 1e-14);
    CHECK(std::abs(orthogonality_sum(t5, 5, 5)) < 1e-14);
    for (std::uint64_t p : odd_primes(61)) {
      const CharacterTable t(p);
      for (std::uint64_t m = 1; m <= 2 * p; ++m)
        for (std::uint64_t n = 1; n <= p; ++n) {
          const bool unit = (m * n) % p != 0;
          const bool pm = m % p == n % p || (m + n) % p == 0;
          const double expected = unit && pm ? 0.5 * static_cast<double>(p - 1) : 0.0;
          REQUIRE(std::abs(orthogonality_sum(t, m, n) - expected) < 1e-6 * static_cast<double>(p));
        }
    }
  }

  TEST_CASE("non-vanishing counts") {
    const CharacterTable t5(5);
    CHECK(nonvanishing_count(t5, 1.0).count == 2);
    for (std::uint64_t p : odd_primes(500)) {
      const NonvanishingResult r = nonvanishing_count(CharacterTable(p), 1.0);
      CHECK(r.count + r.undetermined == (p - 1) / 2);
      CHECK(r.count <= (p - 1) / 2);
      CHECK(r.max_tail < 1e-15);
    }
    CHECK_THROWS_AS(nonvanishing_count(t5, 1.0, 0.0), InvalidArgument);
  }

  TEST_CASE("count floor") {
    for (std::uint64_t p : odd_primes(600)) {
      const LowerBoundReport r = lower_bound_report(CharacterTable(p), 1.0);
      CHECK(r.floor > 0.0);
      CHECK(static_cast<double>(r.m0) >= r.floor);
      CHECK(r.cutoff == mollifier_cutoff(p));
    }
  }

  TEST_CASE("second moment scale") {
    for (std::uint64_t p : {101ULL, 1009ULL, 4999ULL, 9973ULL}) {
      const auto thetas = theta_even(CharacterTable(p), 1.0);
      double m2 = 0.0;
      for (const ThetaValue& v : thetas) m2 += std::norm(v.value);
      CHECK(m2 / std::pow(static_cast<double>(p), 1.5) < 10.0);
    }
  }
}
