#include "gcdlab/small_moments.hpp"

#include <cmath>

#include "gcdlab/energy.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/parallel.hpp"

namespace gcdlab {

HolderExponents HolderExponents::for_r(double r) {
  if (!(r > 4.0 / 3.0 && r < 2.0)) throw InvalidArgument("r must lie in (4/3, 2)");
  return {r, r / (4.0 - 2.0 * r), (8.0 - 6.0 * r) / (8.0 - 4.0 * r), 4.0 - 2.0 * r, (8.0 - 4.0 * r) / (4.0 - 3.0 * r)};
}

std::vector<cplx> initial_sums(const CharacterTable& table, std::uint64_t n) {
  const std::uint32_t chars = table.order();
  std::vector<cplx> out(chars);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(chars); ++a)
    out[static_cast<std::size_t>(a)] = char_sum(Character(table, static_cast<std::uint32_t>(a)), 0, n);
  return out;
}

namespace {

double nonprincipal_mean(const std::vector<double>& per_char, std::uint64_t p) {
  return pairwise_sum(std::span<const double>(per_char).subspan(1)) / static_cast<double>(p - 1);
}

std::vector<cplx> mollifiers(const CharacterTable& table, const WeightVector& w) {
  std::vector<cplx> out(table.order());
  const auto supp = w.support();
  for (std::uint32_t a = 0; a < table.order(); ++a) {
    const Character chi(table, a);
    cplx s{};
    for (std::uint32_t m : supp) s += w(m) * std::conj(chi(m));
    out[a] = s;
  }
  return out;
}

double fourth_mean(const std::vector<cplx>& moll, std::uint64_t p) {
  std::vector<double> v(moll.size());
  for (std::size_t i = 0; i < moll.size(); ++i) v[i] = std::norm(moll[i]) * std::norm(moll[i]);
  return nonprincipal_mean(v, p);
}

double power_mean(const std::vector<cplx>& sums, std::uint64_t p, double k) {
  std::vector<double> v(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) v[i] = std::pow(std::abs(sums[i]), k);
  return nonprincipal_mean(v, p);
}

}  // namespace

double char_moment(const CharacterTable& table, std::uint64_t n, double k) {
  if (n == 0 || n >= table.p()) throw InvalidArgument("char_moment needs 1 <= N < p");
  if (!(k > 0.0)) throw InvalidArgument("moment order must be positive");
  return power_mean(initial_sums(table, n), table.p(), k);
}

double mollified_fourth(const CharacterTable& table, const WeightVector& w) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("mollified_fourth needs nonzero weights");
  const std::uint64_t n = w.limit();
  if (n * n >= table.p()) throw DomainError("mollified_fourth needs N < sqrt(p)");
  return fourth_mean(mollifiers(table, w), table.p());
}

HolderChainReport holder_chain_check(const CharacterTable& table, double r, const WeightVector& w) {
  const HolderExponents e = HolderExponents::for_r(r);
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("holder_chain_check needs nonzero weights");
  const std::uint64_t p = table.p();
  const std::uint64_t n = w.limit();
  if (n >= p) throw InvalidArgument("holder_chain_check needs N < p");

  const auto sums = initial_sums(table, n);
  const auto moll = mollifiers(table, w);
  HolderChainReport rep;
  rep.p = p;
  rep.n = n;
  rep.r = r;
  rep.s1 = power_mean(sums, p, 1.0);
  rep.s2 = power_mean(sums, p, 2.0);
  rep.sr = power_mean(sums, p, r);
  rep.m4 = fourth_mean(moll, p);

  std::vector<double> re(sums.size() - 1), im(sums.size() - 1);
  for (std::size_t i = 1; i < sums.size(); ++i) {
    const cplx prod = sums[i] * moll[i];
    re[i - 1] = prod.real();
    im[i - 1] = prod.imag();
  }
  rep.lhs = std::abs(cplx(pairwise_sum(re), pairwise_sum(im))) / static_cast<double>(p - 1);
  rep.lhs_closed = w.l1_norm() * (1.0 - static_cast<double>(n) / static_cast<double>(p - 1));
  rep.rhs = std::pow(rep.sr, 1.0 / e.hp) * std::pow(rep.s2, 1.0 / e.hq) * std::pow(rep.m4, 0.25);
  rep.slack = rep.rhs - rep.lhs;

  const double l1 = w.l1_norm();
  const double dn = static_cast<double>(n);
  const double ratio = dn * dn * energy(w).as_double() / (l1 * l1 * l1 * l1);
  rep.lower_bound = std::pow(dn, r / 2.0) / std::pow(ratio, 1.0 - r / 2.0);
  rep.within_hypothesis = n * n < p;
  return rep;
}

}  // namespace gcdlab
