#include <doctest.h>

#include <random>

#include "gcdlab/arith.hpp"
#include "gcdlab/dirichlet.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/parallel.hpp"
#include "gcdlab/small_moments.hpp"
#include "gcdlab/theta.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcdlab;

namespace {

struct Snapshot {
  std::vector<double> forms;
  std::vector<u128> energies;
  double real_energy = 0.0, crossed = 0.0, burgess = 0.0, m4 = 0.0;
  std::uint64_t table = 0;
  std::vector<cplx> thetas;
  bool operator==(const Snapshot&) const = default;
};

Snapshot compute(int threads) {
  set_threads(threads);
  std::mt19937_64 rng(53);
  const FactorSieve s(4000);
  Snapshot out;
  for (int t = 0; t < 3; ++t) {
    const WeightVector w = testsupport::to_weights(oracle::random_weights(rng, 4000, 0.5, false));
    for (GcdKernel k : {GcdKernel::T0, GcdKernel::T1})
      for (GcdEvaluator ev : {GcdEvaluator::Direct, GcdEvaluator::DivisorGrouped})
        out.forms.push_back(gcd_quadratic_form(w, k, s, ev));
    out.real_energy += energy(w, EnergyEvaluator::Parametrized).real;
    out.crossed += crossed_energy(w);
  }
  for (double f : t1_level_forms(4000, s)) out.forms.push_back(f);
  out.energies = level_energies(s, 4000);
  out.energies.push_back(energy(all_ones(3000), EnergyEvaluator::Histogram).integer);
  out.table = multiplication_table_count(3000);
  const CharacterTable t(1009);
  out.burgess = burgess_scan(t, 40, 2, 1.0).max_s;
  for (const ThetaValue& v : theta_even(t, 1.0)) out.thetas.push_back(v.value);
  out.m4 = moments(t, 1.0, all_ones(18)).m4_direct;
  return out;
}

}  // namespace

TEST_SUITE("determinism") {
  TEST_CASE("results do not depend on the thread count") {
    const int original = max_threads();
    const Snapshot one = compute(1);
    const Snapshot four = compute(4);
    const Snapshot three = compute(3);
    set_threads(original);
    CHECK(one == four);
    CHECK(one == three);
  }
}
