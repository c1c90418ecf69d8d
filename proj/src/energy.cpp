#include "gcdlab/energy.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

#include "gcdlab/errors.hpp"
#include "gcdlab/numfmt.hpp"
#include "gcdlab/parallel.hpp"

namespace gcdlab {

std::string EnergyValue::to_string() const { return exact ? format_u128(integer) : format_double(real); }

std::string_view to_string(EnergyEvaluator e) noexcept {
  switch (e) {
    case EnergyEvaluator::Quadruple: return "quadruple";
    case EnergyEvaluator::Histogram: return "histogram";
    case EnergyEvaluator::Parametrized: return "parametrized";
    case EnergyEvaluator::Auto: break;
  }
  return "auto";
}

namespace {

constexpr u128 kU64Limit = static_cast<u128>(std::numeric_limits<std::uint64_t>::max());

// Accumulator traits: exact u128 for integral weights, double otherwise.
template <class T>
std::vector<T> weight_table(const WeightVector& w) {
  std::vector<T> t(std::size_t{w.limit()} + 1, T{0});
  for (std::uint32_t m = 1; m <= w.limit(); ++m) t[m] = static_cast<T>(w(m));
  return t;
}

u128 reduce(const std::vector<u128>& v) {
  u128 s = 0;
  for (u128 x : v) s += x;
  return s;
}

double reduce(const std::vector<double>& v) { return pairwise_sum(v); }

u128 square(u128 x) {
  if (x > kU64Limit) throw ResourceLimit("energy exceeds the exact 128-bit range");
  return x * x;
}

double square(double x) { return x * x; }

EnergyValue make_value(u128 v) { return {true, v, static_cast<double>(v)}; }
EnergyValue make_value(double v) { return {false, 0, v}; }

void require_nonzero(const WeightVector& w) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("energy needs nonzero weights");
}

template <class T>
T quadruple_impl(const WeightVector& w) {
  const auto wt = weight_table<T>(w);
  const auto supp = w.support();
  const std::uint64_t n = w.limit();
  std::vector<T> rows(supp.size(), T{0});
  const auto count = static_cast<std::ptrdiff_t>(supp.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::uint64_t m1 = supp[static_cast<std::size_t>(i)];
    std::vector<T> acc;
    for (std::uint64_t m2 : supp) {
      const std::uint64_t prod = m1 * m2;
      for (std::uint64_t n1 : supp) {
        if (prod % n1 != 0) continue;
        const std::uint64_t n2 = prod / n1;
        if (n2 > n) continue;
        acc.push_back(wt[m1] * wt[m2] * wt[n1] * wt[n2]);
      }
    }
    rows[static_cast<std::size_t>(i)] = reduce(acc);
  }
  return reduce(rows);
}

template <class T>
struct ProductTerm {
  std::uint64_t product;
  T value;
};

template <class T>
T histogram_impl(const WeightVector& w, std::size_t budget) {
  const auto wt = weight_table<T>(w);
  const auto supp = w.support();
  const std::size_t s = supp.size();
  const std::size_t pairs = s * (s + 1) / 2;
  if (pairs > budget) throw ResourceLimit("energy_histogram pair budget exceeded");

  std::vector<ProductTerm<T>> terms(pairs);
  const auto count = static_cast<std::ptrdiff_t>(s);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    // row i holds (i, j) for j >= i; rows before it hold s + (s-1) + ... terms
    std::size_t offset = ui * s - ui * (ui - 1) / 2;
    const std::uint64_t a = supp[ui];
    for (std::size_t j = ui; j < s; ++j) {
      const std::uint64_t b = supp[j];
      const T v = wt[a] * wt[b];
      terms[offset++] = {a * b, j == ui ? v : v + v};
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    return x.product != y.product ? x.product < y.product : x.value < y.value;
  });

  std::vector<T> squares;
  for (std::size_t i = 0; i < terms.size();) {
    T r{0};
    std::size_t j = i;
    for (; j < terms.size() && terms[j].product == terms[i].product; ++j) r += terms[j].value;
    squares.push_back(square(r));
    i = j;
  }
  return reduce(squares);
}

template <class T>
T parametrized_impl(const WeightVector& w) {
  const auto wt = weight_table<T>(w);
  const std::uint32_t n = w.limit();
  std::vector<char> has_multiple(std::size_t{n} + 1, 0);
  for (std::uint32_t d = 1; d <= n; ++d)
    for (std::uint32_t m = d; m <= n; m += d)
      if (w(m) > 0.0) {
        has_multiple[d] = 1;
        break;
      }

  std::vector<T> rows(n, T{0});
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t sd2 = 1; sd2 <= static_cast<std::int64_t>(n); ++sd2) {
    const auto d2 = static_cast<std::uint32_t>(sd2);
    if (!has_multiple[d2]) continue;
    const std::uint32_t hmax = n / d2;
    std::vector<T> acc;
    for (std::uint32_t d1 = 1; d1 <= d2; ++d1) {
      if (!has_multiple[d1] || gcd(d1, d2) != 1) continue;
      T s{0};
      for (std::uint32_t h = 1; h <= hmax; ++h) s += wt[h * d1] * wt[h * d2];
      const T sq = square(s);
      acc.push_back(d1 == d2 ? sq : sq + sq);
    }
    rows[d2 - 1] = reduce(acc);
  }
  return reduce(rows);
}

}  // namespace

EnergyValue energy_quadruple(const WeightVector& w) {
  require_nonzero(w);
  if (w.limit() > 300) throw ResourceLimit("energy_quadruple is an oracle for N <= 300");
  return w.is_integral() ? make_value(quadruple_impl<u128>(w)) : make_value(quadruple_impl<double>(w));
}

EnergyValue energy_histogram(const WeightVector& w, std::size_t pair_budget) {
  require_nonzero(w);
  return w.is_integral() ? make_value(histogram_impl<u128>(w, pair_budget))
                         : make_value(histogram_impl<double>(w, pair_budget));
}

EnergyValue energy_parametrized(const WeightVector& w) {
  require_nonzero(w);
  return w.is_integral() ? make_value(parametrized_impl<u128>(w)) : make_value(parametrized_impl<double>(w));
}

EnergyValue energy(const WeightVector& w, EnergyEvaluator evaluator) {
  switch (evaluator) {
    case EnergyEvaluator::Quadruple: return energy_quadruple(w);
    case EnergyEvaluator::Histogram: return energy_histogram(w);
    case EnergyEvaluator::Parametrized: return energy_parametrized(w);
    case EnergyEvaluator::Auto: break;
  }
  require_nonzero(w);
  const std::size_t s = w.support().size();
  if (s * (s + 1) / 2 <= (std::size_t{1} << 22)) return energy_histogram(w);
  return energy_parametrized(w);
}

std::vector<u128> level_energies(const FactorSieve& sieve, std::uint32_t n) {
  if (n == 0 || n > sieve.limit()) throw InvalidArgument("N outside the sieve range");
  const unsigned levels = FactorSieve::max_omega(n) + 1;

  // count[i][x] = #{m <= x : Omega(m) = i}
  std::vector<std::vector<std::uint32_t>> count(levels, std::vector<std::uint32_t>(std::size_t{n} + 1, 0));
  for (std::uint32_t x = 1; x <= n; ++x) {
    for (unsigned i = 0; i < levels; ++i) count[i][x] = count[i][x - 1];
    ++count[sieve.omega(x)][x];
  }

  // pairs[D] = #{(d1, d2) coprime, max = D, Omega(d1) = Omega(d2) = Omega(D)}
  std::vector<std::uint64_t> pairs(std::size_t{n} + 1, 0);
  pairs[1] = 1;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t sd = 2; sd <= static_cast<std::int64_t>(n); ++sd) {
    const auto d = static_cast<std::uint32_t>(sd);
    const unsigned j = sieve.omega(d);
    const auto primes = sieve.distinct_primes(d);
    const std::uint32_t subsets = 1u << primes.size();
    std::int64_t coprime = 0;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      const auto bits = static_cast<unsigned>(std::popcount(mask));
      if (bits > j) continue;
      std::uint32_t e = 1;
      for (std::size_t t = 0; t < primes.size(); ++t)
        if (mask >> t & 1u) e *= primes[t];
      const std::int64_t c = count[j - bits][d / e];
      coprime += (bits % 2 == 0) ? c : -c;
    }
    pairs[d] = 2 * static_cast<std::uint64_t>(coprime);
  }

  std::vector<u128> energies(levels, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t sk = 0; sk < static_cast<std::int64_t>(levels); ++sk) {
    const auto k = static_cast<unsigned>(sk);
    u128 total = 0;
    for (std::uint32_t d = 1; d <= n; ++d) {
      const unsigned j = sieve.omega(d);
      if (j > k || pairs[d] == 0) continue;
      const u128 inner = count[k - j][n / d];
      total += static_cast<u128>(pairs[d]) * inner * inner;
    }
    energies[k] = total;
  }
  return energies;
}

double energy_ratio(const WeightVector& w, EnergyEvaluator evaluator) {
  const EnergyValue e = energy(w, evaluator);
  const double n = w.limit();
  const double l1 = w.l1_norm();
  return n * n * e.as_double() / (l1 * l1 * l1 * l1);
}

EnergyReport energy_report(const WeightVector& w, EnergyEvaluator evaluator) {
  const auto start = std::chrono::steady_clock::now();
  EnergyReport r;
  r.n = w.limit();
  r.weight_desc = w.descriptor();
  if (evaluator == EnergyEvaluator::Auto) {
    require_nonzero(w);
    const std::size_t s = w.support().size();
    evaluator = s * (s + 1) / 2 <= (std::size_t{1} << 22) ? EnergyEvaluator::Histogram : EnergyEvaluator::Parametrized;
  }
  r.evaluator = evaluator;
  r.value = energy(w, evaluator);
  const double n = r.n;
  const double l1 = w.l1_norm();
  r.ratio = n * n * r.value.as_double() / (l1 * l1 * l1 * l1);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

LevelSweep minimize_energy_over_levels(std::uint32_t n, const FactorSieve& sieve) {
  const auto energies = level_energies(sieve, n);
  const unsigned levels = static_cast<unsigned>(energies.size());
  std::vector<double> counts(levels, 0.0);
  for (std::uint32_t m = 1; m <= n; ++m) counts[sieve.omega(m)] += 1.0;

  LevelSweep sweep;
  sweep.ratios.assign(levels, std::numeric_limits<double>::quiet_NaN());
  bool found = false;
  const double dn = n;
  for (unsigned k = 0; k < levels; ++k) {
    if (counts[k] == 0.0) continue;
    const double c = counts[k];
    const double ratio = dn * dn * static_cast<double>(energies[k]) / (c * c * c * c);
    sweep.ratios[k] = ratio;
    if (!found || ratio < sweep.ratio) {
      found = true;
      sweep.k = k;
      sweep.ratio = ratio;
    }
  }
  sweep.kappa = n >= 3 ? static_cast<double>(sweep.k) / loglog(dn) : 0.0;
  return sweep;
}

namespace {

std::vector<std::uint32_t> sorted_set(std::span<const std::uint32_t> s) {
  std::vector<std::uint32_t> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && v.front() == 0) throw InvalidArgument("set members must be >= 1");
  return v;
}

}  // namespace

u128 set_energy(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  const auto sa = sorted_set(a);
  const auto sb = sorted_set(b);
  std::vector<std::uint64_t> products;
  products.reserve(sa.size() * sb.size());
  for (std::uint64_t x : sa)
    for (std::uint64_t y : sb) products.push_back(x * y);
  std::sort(products.begin(), products.end());
  u128 total = 0;
  for (std::size_t i = 0; i < products.size();) {
    std::size_t j = i;
    while (j < products.size() && products[j] == products[i]) ++j;
    const u128 r = j - i;
    total += r * r;
    i = j;
  }
  return total;
}

u128 asym_energy(std::uint32_t n, std::span<const std::uint32_t> b) {
  for (std::uint32_t x : b)
    if (x == 0 || x > n) throw InvalidArgument("asym_energy: B must lie in [1, N]");
  std::vector<std::uint32_t> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = i + 1;
  return set_energy(a, b);
}

std::uint64_t distinct_product_count(std::span<const std::uint32_t> a_in, std::span<const std::uint32_t> b_in) {
  const auto a = sorted_set(a_in);
  const auto b = sorted_set(b_in);
  if (a.empty() || b.empty()) return 0;
  const bool same = a == b;
  const std::uint64_t max_product = std::uint64_t{a.back()} * b.back();
  constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 23;
  const std::uint64_t segments = max_product / kSegmentBits + 1;

  std::vector<std::uint64_t> per_segment(segments, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ss = 0; ss < static_cast<std::int64_t>(segments); ++ss) {
    const std::uint64_t lo = static_cast<std::uint64_t>(ss) * kSegmentBits;  // covers [lo, lo + bits)
    const std::uint64_t hi = std::min(max_product, lo + kSegmentBits - 1);
    std::vector<std::uint64_t> bitmap(kSegmentBits / 64, 0);
    for (std::uint64_t x : a) {
      const std::uint64_t bmin_val = std::max<std::uint64_t>(same ? x : 1, (lo + x - 1) / x);
      const std::uint64_t bmax_val = hi / x;
      if (bmin_val > bmax_val) continue;
      auto it = std::lower_bound(b.begin(), b.end(), bmin_val);
      for (; it != b.end() && *it <= bmax_val; ++it) {
        const std::uint64_t off = x * *it - lo;
        bitmap[off >> 6] |= std::uint64_t{1} << (off & 63);
      }
    }
    std::uint64_t c = 0;
    for (std::uint64_t word : bitmap) c += static_cast<std::uint64_t>(std::popcount(word));
    per_segment[static_cast<std::size_t>(ss)] = c;
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : per_segment) total += c;
  return total;
}

std::uint64_t multiplication_table_count(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("multiplication table needs N >= 1");
  std::vector<std::uint32_t> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = i + 1;
  return distinct_product_count(a, a);
}

std::uint64_t h_count(const FactorSieve& sieve, std::uint32_t n, const MSelector& m_sel, unsigned r) {
  if (n == 0 || n > sieve.limit()) throw InvalidArgument("N outside the sieve range");
  std::vector<std::uint32_t> ms, ns;
  const bool tail = std::holds_alternative<OmegaTail>(m_sel);
  if (tail && n < 2) throw InvalidArgument("tail selector needs N >= 2");
  const double threshold = tail ? loglog(static_cast<double>(n)) : 0.0;
  for (std::uint32_t m = 1; m <= n; ++m) {
    const unsigned om = sieve.omega(m);
    const bool take = tail ? static_cast<double>(om) >= threshold : om == std::get<OmegaLevel>(m_sel).k;
    if (take) ms.push_back(m);
    if (om == r) ns.push_back(m);
  }
  return distinct_product_count(ms, ns);
}

}  // namespace gcdlab
