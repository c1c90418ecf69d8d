#include "gcdlab/weights.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <utility>

#include "gcdlab/errors.hpp"
#include "gcdlab/numfmt.hpp"
#include "gcdlab/parallel.hpp"
#include "gcdlab/variational.hpp"

namespace gcdlab {

WeightVector::WeightVector(std::vector<double> values, std::string descriptor)
    : values_(std::move(values)), descriptor_(std::move(descriptor)) {
  constexpr double kExactCap = 1u << 20;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("weights must be finite and nonnegative");
    if (v != std::floor(v) || v > kExactCap) integral_ = false;
  }
  l1_ = pairwise_sum(values_);
}

std::vector<std::uint32_t> WeightVector::support() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > 0.0) out.push_back(static_cast<std::uint32_t>(i + 1));
  return out;
}

WeightVector WeightVector::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return WeightVector(std::move(v), descriptor_);
}

namespace {

void check_limit(const FactorSieve& sieve, std::uint32_t n) {
  if (n == 0) throw InvalidArgument("N must be >= 1");
  if (n > sieve.limit()) throw InvalidArgument("N exceeds the sieve limit");
}

}  // namespace

WeightVector omega_level_weights(const FactorSieve& sieve, std::uint32_t n, unsigned k) {
  check_limit(sieve, n);
  std::vector<double> v(n, 0.0);
  for (std::uint32_t m = 1; m <= n; ++m) v[m - 1] = sieve.omega(m) == k ? 1.0 : 0.0;
  return WeightVector(std::move(v), "level:" + std::to_string(k));
}

WeightVector omega_tail_weights(const FactorSieve& sieve, std::uint32_t n) {
  if (n < 2) throw InvalidArgument("tail weights need N >= 2");
  check_limit(sieve, n);
  const double cut = loglog(static_cast<double>(n));
  std::vector<double> v(n, 0.0);
  for (std::uint32_t m = 1; m <= n; ++m) v[m - 1] = static_cast<double>(sieve.omega(m)) > cut ? 1.0 : 0.0;
  return WeightVector(std::move(v), "tail");
}

WeightVector all_ones(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("N must be >= 1");
  return WeightVector(std::vector<double>(n, 1.0), "ones");
}

WeightVector indicator(std::uint32_t n, std::span<const std::uint32_t> members) {
  if (n == 0) throw InvalidArgument("N must be >= 1");
  std::vector<double> v(n, 0.0);
  for (std::uint32_t m : members) {
    if (m < 1 || m > n) throw InvalidArgument("indicator member outside [1, N]");
    v[m - 1] = 1.0;
  }
  return WeightVector(std::move(v), "indicator");
}

double loglog(double x) { return std::log(std::log(x)); }

unsigned kappa_to_k(std::uint64_t n, double kappa) {
  if (n < 3) throw InvalidArgument("kappa_to_k needs N >= 3");
  const double x = kappa * loglog(static_cast<double>(n));
  const double r = std::floor(x + 0.5);
  return r <= 0.0 ? 0u : static_cast<unsigned>(r);
}

double l1_norm(const WeightVector& w) noexcept { return w.l1_norm(); }

std::vector<LevelMass> level_mass_profile(const FactorSieve& sieve, std::uint32_t n, double kappa0) {
  if (n < 3) throw InvalidArgument("level mass profile needs N >= 3");
  check_limit(sieve, n);
  if (!(kappa0 > 0.0 && kappa0 < 1.0)) throw InvalidArgument("kappa0 must lie in (0, 1)");
  std::vector<LevelMass> out(FactorSieve::max_omega(n) + 1);
  for (std::uint32_t m = 1; m <= n; ++m) out[sieve.omega(m)].l1 += 1.0;
  const double ll = loglog(static_cast<double>(n));
  const double log_n = std::log(static_cast<double>(n));
  for (unsigned k = 0; k < out.size(); ++k) {
    LevelMass& row = out[k];
    row.k = k;
    row.kappa = k / ll;
    row.ratio = row.l1 * std::pow(log_n, Q(row.kappa)) * std::sqrt(ll) / static_cast<double>(n);
    row.in_range = row.kappa >= kappa0 && row.kappa <= 2.0 - kappa0;
  }
  return out;
}

void write_weight_csv(std::ostream& os, const WeightVector& w) {
  for (std::uint32_t m = 1; m <= w.limit(); ++m)
    if (w(m) != 0.0) os << m << ',' << format_double(w(m)) << '\n';
}

WeightVector read_weight_csv(std::istream& is, std::uint32_t n, std::string descriptor) {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::uint32_t max_m = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("weight line must be 'm,w': " + line);
    std::uint32_t m = 0;
    const auto* b = line.data();
    if (auto [p, ec] = std::from_chars(b, b + comma, m); ec != std::errc() || p != b + comma || m == 0)
      throw InvalidArgument("bad index in weight line: " + line);
    const double value = parse_double(std::string_view(line).substr(comma + 1));
    entries.emplace_back(m, value);
    max_m = std::max(max_m, m);
  }
  if (n == 0) n = max_m;
  if (n == 0) throw InvalidArgument("empty weight file");
  std::vector<double> v(n, 0.0);
  for (auto [m, value] : entries) {
    if (m > n) throw InvalidArgument("weight index beyond N");
    v[m - 1] = value;
  }
  return WeightVector(std::move(v), std::move(descriptor));
}

}  // namespace gcdlab
