#include "gcdlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "gcdlab/errors.hpp"
#include "gcdlab/theta.hpp"

namespace gcdlab::reference {

double gcd_quadratic_form(const WeightVector& w, GcdKernel kind) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("gcd_quadratic_form needs nonzero weights");
  double s = 0.0;
  for (std::uint32_t m1 = 1; m1 <= w.limit(); ++m1)
    for (std::uint32_t m2 = 1; m2 <= w.limit(); ++m2) s += w(m1) * w(m2) * kernel_entry(kind, m1, m2);
  return s;
}

EnergyValue energy_histogram(const WeightVector& w) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("energy needs nonzero weights");
  const auto supp = w.support();
  if (w.is_integral()) {
    std::map<std::uint64_t, u128> r;
    for (std::uint64_t a : supp)
      for (std::uint64_t b : supp)
        r[a * b] += static_cast<u128>(w(static_cast<std::uint32_t>(a))) * static_cast<u128>(w(static_cast<std::uint32_t>(b)));
    u128 total = 0;
    for (const auto& [prod, v] : r) total += v * v;
    return {true, total, static_cast<double>(total)};
  }
  std::map<std::uint64_t, double> r;
  for (std::uint64_t a : supp)
    for (std::uint64_t b : supp) r[a * b] += w(static_cast<std::uint32_t>(a)) * w(static_cast<std::uint32_t>(b));
  double total = 0.0;
  for (const auto& [prod, v] : r) total += v * v;
  return {false, 0, total};
}

EnergyValue energy_parametrized(const WeightVector& w) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("energy needs nonzero weights");
  const std::uint32_t n = w.limit();
  u128 exact = 0;
  double real = 0.0;
  for (std::uint32_t d1 = 1; d1 <= n; ++d1)
    for (std::uint32_t d2 = 1; d2 <= n; ++d2) {
      if (gcd(d1, d2) != 1) continue;
      const std::uint32_t hmax = n / std::max(d1, d2);
      double s = 0.0;
      for (std::uint32_t h = 1; h <= hmax; ++h) s += w(h * d1) * w(h * d2);
      if (w.is_integral()) {
        const auto si = static_cast<u128>(s);
        exact += si * si;
      } else {
        real += s * s;
      }
    }
  if (w.is_integral()) return {true, exact, static_cast<double>(exact)};
  return {false, 0, real};
}

std::uint64_t multiplication_table_count(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("multiplication table needs N >= 1");
  std::vector<std::uint64_t> products;
  products.reserve(std::size_t{n} * n);
  for (std::uint64_t a = 1; a <= n; ++a)
    for (std::uint64_t b = 1; b <= n; ++b) products.push_back(a * b);
  std::sort(products.begin(), products.end());
  return static_cast<std::uint64_t>(std::unique(products.begin(), products.end()) - products.begin());
}

double burgess_max(const CharacterTable& table, std::uint64_t n, std::uint64_t stride) {
  if (stride == 0) throw InvalidArgument("stride must be positive");
  double best = 0.0;
  for (std::uint32_t a = 1; a < table.order(); ++a) {
    const Character chi(table, a);
    for (std::uint64_t m = 0; m < table.p(); m += stride) {
      cplx s{};
      for (std::uint64_t k = m + 1; k <= m + n; ++k) s += chi(k);
      best = std::max(best, std::abs(s));
    }
  }
  return best;
}

std::vector<cplx> theta_even(const CharacterTable& table, double x) {
  std::vector<cplx> out;
  for (const Character& chi : even_characters(table)) {
    const std::uint64_t n_max = gcdlab::theta(chi, x).n_max;
    cplx s{};
    for (std::uint64_t k = 1; k <= n_max; ++k)
      s += chi(k) * std::exp(-std::numbers::pi * static_cast<double>(k * k) * x / static_cast<double>(table.p()));
    out.push_back(s);
  }
  return out;
}

}  // namespace gcdlab::reference
