// Serial reference kernels against the parallel ones.

#include <benchmark/benchmark.h>

#include "gcdlab/arith.hpp"
#include "gcdlab/dirichlet.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/reference.hpp"
#include "gcdlab/theta.hpp"
#include "gcdlab/weights.hpp"

using namespace gcdlab;

namespace {

void gcd_form_reference(benchmark::State& st) {
  const WeightVector w = all_ones(static_cast<std::uint32_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::gcd_quadratic_form(w, GcdKernel::T1));
}

void gcd_form_grouped(benchmark::State& st) {
  const auto n = static_cast<std::uint32_t>(st.range(0));
  const FactorSieve s(n);
  const WeightVector w = all_ones(n);
  for (auto _ : st) benchmark::DoNotOptimize(gcd_quadratic_form(w, GcdKernel::T1, s, GcdEvaluator::DivisorGrouped));
}

void energy_histogram_reference(benchmark::State& st) {
  const WeightVector w = all_ones(static_cast<std::uint32_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::energy_histogram(w));
}

void energy_histogram_parallel(benchmark::State& st) {
  const WeightVector w = all_ones(static_cast<std::uint32_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(energy_histogram(w));
}

void energy_parametrized_reference(benchmark::State& st) {
  const WeightVector w = all_ones(static_cast<std::uint32_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::energy_parametrized(w));
}

void energy_parametrized_parallel(benchmark::State& st) {
  const WeightVector w = all_ones(static_cast<std::uint32_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(energy_parametrized(w));
}

void multable_reference(benchmark::State& st) {
  const auto n = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::multiplication_table_count(n));
}

void multable_parallel(benchmark::State& st) {
  const auto n = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(multiplication_table_count(n));
}

void burgess_reference(benchmark::State& st) {
  const CharacterTable t(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::burgess_max(t, 30, 1));
}

void burgess_parallel(benchmark::State& st) {
  const CharacterTable t(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(burgess_scan(t, 30, 2, 1.0, 1).max_s);
}

void theta_reference(benchmark::State& st) {
  const CharacterTable t(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::theta_even(t, 1.0));
}

void theta_parallel(benchmark::State& st) {
  const CharacterTable t(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(theta_even(t, 1.0));
}

}  // namespace

BENCHMARK(gcd_form_reference)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(gcd_form_grouped)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(energy_histogram_reference)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(energy_histogram_parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(energy_parametrized_reference)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(energy_parametrized_parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(multable_reference)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(multable_parallel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(burgess_reference)->Arg(1009)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(burgess_parallel)->Arg(1009)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(theta_reference)->Arg(1009)->Arg(4999)->Unit(benchmark::kMillisecond);
BENCHMARK(theta_parallel)->Arg(1009)->Arg(4999)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
