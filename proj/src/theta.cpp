#include "gcdlab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcdlab/arith.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/parallel.hpp"

namespace gcdlab {

namespace {

constexpr double kDigits = 17.0;

std::uint64_t truncation_length(std::uint64_t p, double x) {
  const double dp = static_cast<double>(p);
  return static_cast<std::uint64_t>(
      std::ceil(std::sqrt(dp * (kDigits * std::log(10.0) + std::log(dp)) / (std::numbers::pi * x))));
}

double tail_bound(std::uint64_t p, double x, std::uint64_t n0) {
  const double dp = static_cast<double>(p), dn = static_cast<double>(n0);
  const double c = std::numbers::pi * x / dp;
  return std::exp(-c * dn * dn) / (1.0 - std::exp(-c * (2.0 * dn + 1.0)));
}

std::vector<double> gaussian_weights(std::uint64_t p, double x, std::uint64_t n_max) {
  std::vector<double> g(n_max + 1, 0.0);
  const double c = std::numbers::pi * x / static_cast<double>(p);
  for (std::uint64_t n = 1; n <= n_max; ++n) g[n] = std::exp(-c * static_cast<double>(n) * static_cast<double>(n));
  return g;
}

// Summed from the smallest term up.
cplx theta_sum(const Character& chi, const std::vector<double>& gauss) {
  cplx s{};
  for (std::size_t n = gauss.size() - 1; n >= 1; --n) s += chi(n) * gauss[n];
  return s;
}

void require_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("theta needs x > 0");
}

}  // namespace

std::vector<Character> even_characters(const CharacterTable& table) {
  std::vector<Character> out;
  for (std::uint32_t a = 0; a < table.order(); a += 2) out.emplace_back(table, a);
  return out;
}

ThetaValue theta(const Character& chi, double x) {
  require_x(x);
  const std::uint64_t p = chi.table().p();
  ThetaValue t;
  t.p = p;
  t.index = chi.index();
  t.x = x;
  t.n_max = truncation_length(p, x);
  t.tail_bound = tail_bound(p, x, t.n_max);
  t.value = theta_sum(chi, gaussian_weights(p, x, t.n_max));
  return t;
}

std::vector<ThetaValue> theta_even(const CharacterTable& table, double x) {
  require_x(x);
  const std::uint64_t p = table.p();
  const std::uint64_t n_max = truncation_length(p, x);
  const double tail = tail_bound(p, x, n_max);
  const auto gauss = gaussian_weights(p, x, n_max);
  const auto chars = even_characters(table);
  std::vector<ThetaValue> out(chars.size());
  const auto count = static_cast<std::ptrdiff_t>(chars.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out[ui] = {p, chars[ui].index(), x, theta_sum(chars[ui], gauss), n_max, tail};
  }
  return out;
}

std::uint64_t mollifier_cutoff(std::uint64_t p) { return isqrt(p / 3); }

cplx mollifier(const Character& chi, const WeightVector& w) {
  const auto supp = w.support();
  if (!supp.empty() && supp.back() > mollifier_cutoff(chi.table().p()))
    throw InvalidArgument("mollifier weights extend past floor(sqrt(p/3))");
  cplx s{};
  for (std::uint32_t m : supp) s += w(m) * std::conj(chi(m));
  return s;
}

MomentReport moments(const CharacterTable& table, double x, const WeightVector& w, double threshold) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("moments need nonzero weights");
  const std::uint64_t p = table.p();
  const auto thetas = theta_even(table, x);
  if (!(threshold > thetas.front().tail_bound)) throw InvalidArgument("threshold below the certified tail bound");
  const auto chars = even_characters(table);

  std::vector<cplx> moll(chars.size());
  const auto count = static_cast<std::ptrdiff_t>(chars.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    moll[static_cast<std::size_t>(i)] = mollifier(chars[static_cast<std::size_t>(i)], w);

  MomentReport r;
  r.p = p;
  r.x = x;
  r.weight_desc = w.descriptor();
  r.cutoff = mollifier_cutoff(p);
  std::vector<double> re(chars.size()), im(chars.size()), m2(chars.size()), m4(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const cplx prod = moll[i] * thetas[i].value;
    re[i] = prod.real();
    im[i] = prod.imag();
    m2[i] = std::norm(thetas[i].value);
    const double a2 = std::norm(moll[i]);
    m4[i] = a2 * a2;
    if (std::abs(thetas[i].value) > threshold)
      ++r.m0;
    else
      ++r.undetermined;
  }
  r.m1 = {pairwise_sum(re), pairwise_sum(im)};
  r.m2 = pairwise_sum(m2);
  r.m4_direct = pairwise_sum(m4);
  r.m4_identity = 0.5 * static_cast<double>(p - 1) * energy(w).as_double();

  std::vector<double> diag;
  const double c = std::numbers::pi * x / static_cast<double>(p);
  for (std::uint32_t m : w.support()) diag.push_back(w(m) * std::exp(-c * static_cast<double>(m) * m));
  r.m1_diagonal = 0.5 * static_cast<double>(p - 1) * pairwise_sum(diag);

  r.holder_rhs = std::sqrt(r.m2) * std::pow(r.m4_direct, 0.25) * std::pow(static_cast<double>(r.m0 + r.undetermined), 0.25);
  r.holder_slack = r.holder_rhs - std::abs(r.m1);
  return r;
}

cplx orthogonality_sum(const CharacterTable& table, std::uint64_t m, std::uint64_t n) {
  cplx s{};
  for (const Character& chi : even_characters(table)) s += chi(m) * std::conj(chi(n));
  return s;
}

NonvanishingResult nonvanishing_count(const CharacterTable& table, double x, double threshold) {
  const auto thetas = theta_even(table, x);
  NonvanishingResult r;
  r.max_tail = thetas.front().tail_bound;
  if (!(threshold > r.max_tail)) throw InvalidArgument("threshold below the certified tail bound");
  r.min_abs_nonprincipal = std::numeric_limits<double>::infinity();
  for (const ThetaValue& t : thetas) {
    const double a = std::abs(t.value);
    if (a > threshold)
      ++r.count;
    else
      ++r.undetermined;
    if (t.index != 0) r.min_abs_nonprincipal = std::min(r.min_abs_nonprincipal, a);
  }
  return r;
}

LowerBoundReport lower_bound_report(const CharacterTable& table, double x) {
  const std::uint64_t p = table.p();
  const auto cutoff = static_cast<std::uint32_t>(mollifier_cutoff(p));
  if (cutoff == 0) throw DomainError("mollifier cutoff is empty");
  const FactorSieve sieve(cutoff);
  const LevelSweep sweep = minimize_energy_over_levels(cutoff, sieve);
  const WeightVector w = omega_level_weights(sieve, cutoff, sweep.k);
  const MomentReport m = moments(table, x, w);
  LowerBoundReport r;
  r.p = p;
  r.x = x;
  r.cutoff = cutoff;
  r.k = sweep.k;
  r.energy_ratio = sweep.ratio;
  const double a = std::abs(m.m1);
  r.floor = a * a * a * a / (m.m2 * m.m2 * m.m4_direct);
  r.m0 = m.m0;
  return r;
}

}  // namespace gcdlab
