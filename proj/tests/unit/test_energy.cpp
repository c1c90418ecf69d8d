#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gcdlab/arith.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/numfmt.hpp"
#include "gcdlab/reference.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcdlab;
using testsupport::rel_err;
using testsupport::to_weights;

namespace {

void check_all_agree(const WeightVector& w, double truth) {
  const EnergyValue q = energy_quadruple(w), h = energy_histogram(w), p = energy_parametrized(w);
  if (w.is_integral()) {
    REQUIRE(q.exact);
    REQUIRE(q == h);
    REQUIRE(q == p);
    REQUIRE(q == reference::energy_histogram(w));
    REQUIRE(q == reference::energy_parametrized(w));
    REQUIRE(q.as_double() == truth);
  } else {
    REQUIRE_FALSE(q.exact);
    REQUIRE(rel_err(q.real, truth) < 1e-12);
    REQUIRE(rel_err(h.real, truth) < 1e-12);
    REQUIRE(rel_err(p.real, truth) < 1e-12);
    REQUIRE(rel_err(reference::energy_histogram(w).real, truth) < 1e-12);
  }
}

std::uint64_t brute_h(std::uint32_t n, const std::function<bool(std::uint32_t)>& m_ok, unsigned r) {
  std::set<std::uint64_t> out;
  for (std::uint32_t m = 1; m <= n; ++m)
    if (m_ok(m))
      for (std::uint32_t k = 1; k <= n; ++k)
        if (oracle::big_omega(k) == r) out.insert(std::uint64_t{m} * k);
  return out.size();
}

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("examples") {
    CHECK(energy_quadruple(all_ones(1)).integer == 1);
    CHECK(energy_quadruple(all_ones(2)).integer == 6);
    CHECK(energy_quadruple(all_ones(3)).integer == 15);
    for (EnergyEvaluator e : {EnergyEvaluator::Histogram, EnergyEvaluator::Parametrized, EnergyEvaluator::Auto}) {
      CHECK(energy(all_ones(1), e).integer == 1);
      CHECK(energy(all_ones(2), e).integer == 6);
      CHECK(energy(all_ones(3), e).integer == 15);
    }
    CHECK(energy_ratio(all_ones(1)) == 1.0);
    CHECK(energy_ratio(all_ones(2)) == 1.5);
    const EnergyReport r = energy_report(all_ones(3));
    CHECK(r.value.to_string() == "15");
    CHECK(r.ratio == doctest::Approx(9.0 * 15.0 / 81.0));
  }

  TEST_CASE("prime weights") {
    const FactorSieve s(10);
    const WeightVector w = omega_level_weights(s, 10, 1);
    const EnergyValue q = energy_quadruple(w);
    CHECK(q == energy_histogram(w));
    CHECK(q == energy_parametrized(w));
    CHECK(q.as_double() == oracle::energy4(testsupport::one_based(w)));
  }

  TEST_CASE("triple oracle on all-ones and every level") {
    const FactorSieve s(60);
    for (std::uint32_t n = 1; n <= 40; ++n) {
      check_all_agree(all_ones(n), oracle::energy4(std::vector<double>(n + 1, 1.0)));
      for (unsigned k = 0; k <= FactorSieve::max_omega(n); ++k) {
        const WeightVector w = omega_level_weights(s, n, k);
        if (!w.is_zero()) check_all_agree(w, oracle::energy4(testsupport::one_based(w)));
      }
    }
  }

  TEST_CASE("triple oracle on random weights") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
      const auto w = oracle::random_weights(rng, 1 + rng() % 45, 0.4, trial % 2 == 0);
      check_all_agree(to_weights(w), oracle::energy4(w));
    }
  }

  TEST_CASE("level energies match the evaluators") {
    const FactorSieve s(3000);
    for (std::uint32_t n : {1u, 2u, 3u, 10u, 64u, 500u, 3000u}) {
      const auto e = level_energies(s, n);
      REQUIRE(e.size() == FactorSieve::max_omega(n) + 1);
      for (unsigned k = 0; k < e.size(); ++k) {
        const WeightVector w = omega_level_weights(s, n, k);
        if (w.is_zero())
          CHECK(e[k] == 0);
        else
          CHECK(e[k] == energy_histogram(w).integer);
      }
    }
  }

  TEST_CASE("level sweep") {
    const FactorSieve s(10'000);
    const LevelSweep small = minimize_energy_over_levels(64, s);
    for (unsigned k = 0; k < small.ratios.size(); ++k) {
      const WeightVector w = omega_level_weights(s, 64, k);
      if (w.is_zero()) continue;
      CHECK(small.ratios[k] == doctest::Approx(energy_ratio(w)).epsilon(1e-12));
      CHECK(small.ratio <= small.ratios[k]);
    }
    const LevelSweep big = minimize_energy_over_levels(10'000, s);
    CHECK(big.kappa >= 0.4);
    CHECK(big.kappa <= 1.1);
  }

  TEST_CASE("diagonal lower bound and Cauchy-Schwarz") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
      const auto w = oracle::random_weights(rng, 1 + rng() % 200, 0.3, trial % 2 == 0);
      const WeightVector wv = to_weights(w);
      const double e = energy(wv).as_double();
      double fourth = 0.0;
      std::set<std::uint64_t> products;
      for (std::size_t a = 1; a < w.size(); ++a) {
        fourth += std::pow(w[a], 4);
        if (w[a] > 0)
          for (std::size_t b = 1; b < w.size(); ++b)
            if (w[b] > 0) products.insert(a * b);
      }
      CHECK(e >= fourth);
      const double l1 = wv.l1_norm();
      CHECK(std::pow(l1, 4) <= e * static_cast<double>(products.size()) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("scaling") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      const WeightVector w = to_weights(oracle::random_weights(rng, 150, 0.5, false));
      const double e = energy(w).as_double();
      for (double c : {0.5, 3.0, 1e3}) {
        CHECK(rel_err(energy(w.scaled(c)).as_double(), std::pow(c, 4) * e) < 1e-12);
        CHECK(rel_err(energy_ratio(w.scaled(c)), energy_ratio(w)) < 1e-12);
      }
    }
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(energy_quadruple(all_ones(301)), ResourceLimit);
    CHECK_THROWS_AS(energy_histogram(all_ones(1000), 1000), ResourceLimit);
    CHECK_THROWS_AS(energy(WeightVector({0.0, 0.0}, "zero")), InvalidArgument);
    CHECK_THROWS_AS(energy_ratio(WeightVector({0.0}, "zero")), InvalidArgument);
    CHECK(energy(all_ones(2000)).integer == energy_parametrized(all_ones(2000)).integer);
  }

  TEST_CASE("large exact values print in full") {
    const EnergyValue v = energy(all_ones(5000));
    CHECK(v.exact);
    CHECK(v.to_string() == format_u128(v.integer));
    CHECK(format_u128(static_cast<u128>(1) << 100) == "1267650600228229401496703205376");
    CHECK(format_u128(0) == "0");
  }

  TEST_CASE("set energies") {
    const std::vector<std::uint32_t> one{1}, three{1, 2, 3}, two{1, 2};
    CHECK(set_energy(one, one) == 1);
    CHECK(set_energy(three, three) == 15);
    CHECK(asym_energy(2, two) == 6);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint32_t> a, b;
      for (std::uint32_t m = 1; m <= 40; ++m) {
        if (rng() % 3 == 0) a.push_back(m);
        if (rng() % 4 == 0) b.push_back(m);
      }
      if (a.empty() || b.empty()) continue;
      std::uint64_t brute = 0;
      for (auto m1 : a)
        for (auto n1 : a)
          for (auto m2 : b)
            for (auto n2 : b) brute += m1 * m2 == n1 * n2;
      CHECK(static_cast<std::uint64_t>(set_energy(a, b)) == brute);
      std::vector<std::uint32_t> all(40);
      for (std::uint32_t m = 1; m <= 40; ++m) all[m - 1] = m;
      CHECK(asym_energy(40, b) == set_energy(all, b));
    }
    const std::vector<std::uint32_t> outside{3};
    CHECK_THROWS_AS(asym_energy(2, outside), InvalidArgument);
  }

  TEST_CASE("multiplication table") {
    CHECK(multiplication_table_count(1) == 1);
    CHECK(multiplication_table_count(3) == 6);
    CHECK(multiplication_table_count(4) == 9);
    for (std::uint32_t n = 1; n <= 120; ++n) REQUIRE(multiplication_table_count(n) == oracle::distinct_products(n));
    for (std::uint32_t n : {257u, 1000u}) CHECK(multiplication_table_count(n) == reference::multiplication_table_count(n));
    double prev = 0.0;
    for (std::uint32_t n = 2; n <= (1u << 12); n *= 2) {
      const double density = static_cast<double>(n) * n / static_cast<double>(multiplication_table_count(n));
      CHECK(density >= prev);
      prev = density;
    }
    CHECK_THROWS_AS(multiplication_table_count(0), InvalidArgument);
  }

  TEST_CASE("distinct product count") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint32_t> a, b;
      for (std::uint32_t m = 1; m <= 300; ++m) {
        if (rng() % 5 == 0) a.push_back(m);
        if (rng() % 7 == 0) b.push_back(m);
      }
      std::set<std::uint64_t> brute;
      for (auto x : a)
        for (auto y : b) brute.insert(std::uint64_t{x} * y);
      CHECK(distinct_product_count(a, b) == brute.size());
    }
  }

  TEST_CASE("h counts") {
    const FactorSieve s(200);
    CHECK(h_count(s, 4, OmegaLevel{1}, 1) == 3);
    CHECK(h_count(s, 3, OmegaLevel{1}, 1) == 3);
    for (std::uint32_t n : {1u, 5u, 50u}) CHECK(h_count(s, n, OmegaLevel{0}, 0) == 1);
    for (std::uint32_t n : {10u, 60u, 200u})
      for (unsigned k = 0; k <= 3; ++k)
        for (unsigned r = 0; r <= 3; ++r) {
          const std::uint64_t truth = brute_h(n, [k](std::uint32_t m) { return oracle::big_omega(m) == k; }, r);
          CHECK(h_count(s, n, OmegaLevel{k}, r) == truth);
        }
    for (std::uint32_t n : {16u, 100u, 200u}) {
      const double cut = std::log(std::log(static_cast<double>(n)));
      for (unsigned r = 0; r <= 3; ++r) {
        const std::uint64_t truth = brute_h(n, [cut](std::uint32_t m) { return oracle::big_omega(m) >= cut; }, r);
        CHECK(h_count(s, n, OmegaTail{}, r) == truth);
      }
    }
    CHECK_THROWS_AS(h_count(s, 1, OmegaTail{}, 1), InvalidArgument);
  }
}
