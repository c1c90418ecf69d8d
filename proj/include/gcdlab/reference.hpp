#pragma once

#include <cstdint>

#include "gcdlab/dirichlet.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/weights.hpp"

/// Serial, unoptimized versions of the parallel kernels. Used by the
/// self-check command, the tests and the benchmarks.
namespace gcdlab::reference {

/// Plain double loop over all m1, m2 <= N.
double gcd_quadratic_form(const WeightVector& w, GcdKernel kind);

/// Ordered map from product to r_w(P).
EnergyValue energy_histogram(const WeightVector& w);

/// Direct unhalved coprime-pair loop.
EnergyValue energy_parametrized(const WeightVector& w);

/// Sort and deduplicate all N^2 products.
std::uint64_t multiplication_table_count(std::uint32_t n);

/// Max |S_chi(M, N)| over nonprincipal chi and M in multiples of stride,
/// each sum evaluated term by term.
double burgess_max(const CharacterTable& table, std::uint64_t n, std::uint64_t stride);

/// Term-by-term theta sum for every even character.
std::vector<cplx> theta_even(const CharacterTable& table, double x);

}  // namespace gcdlab::reference
