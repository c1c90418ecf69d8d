#include "gcdlab/gcd_sums.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "gcdlab/errors.hpp"
#include "gcdlab/parallel.hpp"
#include "gcdlab/qp.hpp"

namespace gcdlab {

std::string_view to_string(GcdKernel kind) noexcept { return kind == GcdKernel::T0 ? "T0" : "T1"; }

GcdKernel parse_gcd_kernel(std::string_view s) {
  if (s == "T0" || s == "t0") return GcdKernel::T0;
  if (s == "T1" || s == "t1") return GcdKernel::T1;
  throw InvalidArgument("kernel must be T0 or T1");
}

double kernel_entry(GcdKernel kind, std::uint64_t m, std::uint64_t n) noexcept {
  const auto g = static_cast<double>(gcd(m, n));
  const auto dm = static_cast<double>(m);
  const auto dn = static_cast<double>(n);
  return kind == GcdKernel::T0 ? g / (dm + dn) : g / std::sqrt(dm * dn);
}

namespace {

struct Support {
  std::vector<std::uint32_t> index;
  std::vector<double> weight;
};

Support compact(const WeightVector& w) {
  Support s;
  for (std::uint32_t m = 1; m <= w.limit(); ++m)
    if (w(m) > 0.0) {
      s.index.push_back(m);
      s.weight.push_back(w(m));
    }
  return s;
}

double direct_form(const WeightVector& w, GcdKernel kind) {
  const Support s = compact(w);
  const auto count = static_cast<std::ptrdiff_t>(s.index.size());
  std::vector<double> rows(s.index.size());
  std::vector<double> buf;
#pragma omp parallel for schedule(dynamic, 8) firstprivate(buf)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    buf.resize(ui + 1);
    const std::uint64_t mi = s.index[ui];
    for (std::size_t j = 0; j < ui; ++j) buf[j] = 2.0 * s.weight[j] * kernel_entry(kind, mi, s.index[j]);
    buf[ui] = s.weight[ui] * kernel_entry(kind, mi, mi);
    rows[ui] = s.weight[ui] * pairwise_sum(buf);
  }
  return pairwise_sum(rows);
}

double grouped_t1(const WeightVector& w, const FactorSieve& sieve) {
  const std::uint32_t n = w.limit();
  std::vector<double> scaled(n + 1, 0.0);
  for (std::uint32_t m = 1; m <= n; ++m) scaled[m] = w(m) / std::sqrt(static_cast<double>(m));
  std::vector<double> per_d(n, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t d = 1; d <= static_cast<std::int64_t>(n); ++d) {
    double s = 0.0;
    for (std::uint32_t m = static_cast<std::uint32_t>(d); m <= n; m += static_cast<std::uint32_t>(d)) s += scaled[m];
    per_d[static_cast<std::size_t>(d - 1)] = static_cast<double>(sieve.phi(static_cast<std::uint32_t>(d))) * s * s;
  }
  return pairwise_sum(per_d);
}

// FFTW plans keyed by transform length; planning is serialized, execution is
// thread-safe through the new-array interface.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan backward;
  };

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  Plans get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    const int len = static_cast<int>(n);
    Plans p{fftw_plan_dft_r2c_1d(len, in, out, FFTW_ESTIMATE), fftw_plan_dft_c2r_1d(len, out, in, FFTW_ESTIMATE)};
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, Plans> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// sum_{a,b<=L} u(a) u(b) / (a+b) through the additive self-convolution of u.
double cauchy_form_fft(std::span<const double> u) {
  const std::size_t len = u.size();
  const std::size_t n = std::bit_ceil(2 * len + 2);
  const auto plans = plan_cache().get(n);
  double* in = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
  std::fill(in, in + n, 0.0);
  for (std::size_t a = 1; a <= len; ++a) in[a] = u[a - 1];
  fftw_execute_dft_r2c(plans.forward, in, spec);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double re = spec[k][0], im = spec[k][1];
    spec[k][0] = re * re - im * im;
    spec[k][1] = 2.0 * re * im;
  }
  fftw_execute_dft_c2r(plans.backward, spec, in);
  std::vector<double> terms(2 * len - 1);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t s = 2; s <= 2 * len; ++s) terms[s - 2] = in[s] * scale / static_cast<double>(s);
  fftw_free(in);
  fftw_free(spec);
  return pairwise_sum(terms);
}

double cauchy_form_direct(std::span<const double> u) {
  std::vector<double> rows;
  for (std::size_t a = 1; a <= u.size(); ++a) {
    if (u[a - 1] == 0.0) continue;
    double s = 0.0;
    for (std::size_t b = 1; b < a; ++b)
      if (u[b - 1] != 0.0) s += u[b - 1] / static_cast<double>(a + b);
    rows.push_back(u[a - 1] * (2.0 * s + 0.5 * u[a - 1] / static_cast<double>(a)));
  }
  return pairwise_sum(rows);
}

double grouped_t0(const WeightVector& w, const FactorSieve& sieve) {
  constexpr std::size_t kFftThreshold = 96;
  const std::uint32_t n = w.limit();
  std::vector<double> per_d(n, 0.0);
  std::vector<double> u;
#pragma omp parallel for schedule(dynamic, 1) firstprivate(u)
  for (std::int64_t d = 1; d <= static_cast<std::int64_t>(n); ++d) {
    const auto ud = static_cast<std::uint32_t>(d);
    const std::uint32_t len = n / ud;
    u.assign(len, 0.0);
    std::size_t nonzero = 0;
    for (std::uint32_t a = 1; a <= len; ++a) {
      u[a - 1] = w(a * ud);
      if (u[a - 1] != 0.0) ++nonzero;
    }
    if (nonzero == 0) continue;
    const double inner = nonzero <= kFftThreshold ? cauchy_form_direct(u) : cauchy_form_fft(u);
    per_d[ud - 1] = static_cast<double>(sieve.phi(ud)) / static_cast<double>(ud) * inner;
  }
  return pairwise_sum(per_d);
}

}  // namespace

double gcd_quadratic_form(const WeightVector& w, GcdKernel kind, const FactorSieve& sieve, GcdEvaluator evaluator) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("gcd_quadratic_form needs nonzero weights");
  if (evaluator == GcdEvaluator::Auto) {
    const bool sieve_ok = sieve.limit() >= w.limit();
    if (kind == GcdKernel::T1)
      evaluator = sieve_ok ? GcdEvaluator::DivisorGrouped : GcdEvaluator::Direct;
    else
      evaluator = (sieve_ok && w.support().size() > 1500) ? GcdEvaluator::DivisorGrouped : GcdEvaluator::Direct;
  }
  if (evaluator == GcdEvaluator::Direct) return direct_form(w, kind);
  if (sieve.limit() < w.limit()) throw InvalidArgument("sieve shorter than the weight vector");
  return kind == GcdKernel::T1 ? grouped_t1(w, sieve) : grouped_t0(w, sieve);
}

GcdSumReport normalized_ratio(const WeightVector& w, GcdKernel kind, const FactorSieve& sieve, GcdEvaluator evaluator) {
  const auto start = std::chrono::steady_clock::now();
  GcdSumReport r;
  r.n = w.limit();
  r.kind = kind;
  r.weight_desc = w.descriptor();
  r.raw = gcd_quadratic_form(w, kind, sieve, evaluator);
  const double l1 = w.l1_norm();
  r.ratio = static_cast<double>(r.n) * r.raw / (l1 * l1);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double set_gcd_sum(std::span<const std::uint32_t> set) {
  if (set.empty()) throw InvalidArgument("set_gcd_sum needs a nonempty set");
  std::vector<double> rows(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] == 0) throw InvalidArgument("set members must be >= 1");
    double s = 0.0;
    for (std::uint32_t b : set) s += kernel_entry(GcdKernel::T0, set[i], b);
    rows[i] = s;
  }
  return pairwise_sum(rows);
}

double crossed_energy(const WeightVector& w) {
  if (w.limit() == 0 || w.is_zero()) throw InvalidArgument("crossed_energy needs nonzero weights");
  const Support s = compact(w);
  const std::uint64_t n = w.limit();
  const auto count = static_cast<std::ptrdiff_t>(s.index.size());
  std::vector<double> rows(s.index.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const std::uint64_t mi = s.index[ui];
    double acc = 0.0;
    for (std::size_t j = 0; j < s.index.size(); ++j) {
      const std::uint64_t mj = s.index[j];
      const std::uint64_t admissible = n * gcd(mi, mj) / std::max(mi, mj);
      acc += s.weight[j] * static_cast<double>(admissible);
    }
    rows[ui] = s.weight[ui] * acc;
  }
  return pairwise_sum(rows);
}

GcdMinimum exact_minimize(std::uint32_t n, GcdKernel kind, const FactorSieve& sieve, double tol,
                          std::size_t max_iterations) {
  if (n == 0) throw InvalidArgument("exact_minimize needs N >= 1");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  (void)sieve;
  const KernelEntry entry = [kind](std::size_t i, std::size_t j) { return kernel_entry(kind, i + 1, j + 1); };
  SimplexQpOptions opts;
  opts.tol = tol;
  opts.max_iterations = max_iterations;
  const SimplexQpResult qp = minimize_on_simplex(n, entry, opts);
  GcdMinimum out;
  out.weights = WeightVector(qp.x, "optimal-qp");
  out.ratio = static_cast<double>(n) * qp.value;
  out.gap = static_cast<double>(n) * qp.gap;
  out.iterations = qp.iterations;
  return out;
}

std::vector<double> t1_level_forms(std::uint32_t n, const FactorSieve& sieve) {
  if (n == 0 || n > sieve.limit()) throw InvalidArgument("N outside the sieve range");
  const unsigned levels = FactorSieve::max_omega(n) + 1;
  std::vector<double> scaled(n + 1, 0.0);
  for (std::uint32_t m = 1; m <= n; ++m) scaled[m] = 1.0 / std::sqrt(static_cast<double>(m));

  // per_d[(d-1)*levels + k] = phi(d) * (sum_{d|m, Omega(m)=k} m^{-1/2})^2
  std::vector<double> per_d(static_cast<std::size_t>(n) * levels, 0.0);
  std::vector<double> acc;
#pragma omp parallel for schedule(dynamic, 64) firstprivate(acc)
  for (std::int64_t d = 1; d <= static_cast<std::int64_t>(n); ++d) {
    const auto ud = static_cast<std::uint32_t>(d);
    acc.assign(levels, 0.0);
    for (std::uint32_t m = ud; m <= n; m += ud) acc[sieve.omega(m)] += scaled[m];
    const double phi = sieve.phi(ud);
    for (unsigned k = 0; k < levels; ++k) per_d[(ud - 1) * std::size_t{levels} + k] = phi * acc[k] * acc[k];
  }
  std::vector<double> forms(levels, 0.0), column(n);
  for (unsigned k = 0; k < levels; ++k) {
    for (std::uint32_t d = 0; d < n; ++d) column[d] = per_d[d * std::size_t{levels} + k];
    forms[k] = pairwise_sum(column);
  }
  return forms;
}

LevelSweep minimize_over_levels(std::uint32_t n, GcdKernel kind, const FactorSieve& sieve) {
  if (n == 0 || n > sieve.limit()) throw InvalidArgument("N outside the sieve range");
  const unsigned levels = FactorSieve::max_omega(n) + 1;
  std::vector<double> counts(levels, 0.0);
  for (std::uint32_t m = 1; m <= n; ++m) counts[sieve.omega(m)] += 1.0;

  LevelSweep sweep;
  sweep.ratios.assign(levels, std::numeric_limits<double>::quiet_NaN());
  std::vector<double> t1_forms;
  if (kind == GcdKernel::T1) t1_forms = t1_level_forms(n, sieve);

  bool found = false;
  for (unsigned k = 0; k < levels; ++k) {
    if (counts[k] == 0.0) continue;
    const double raw = kind == GcdKernel::T1 ? t1_forms[k]
                                             : gcd_quadratic_form(omega_level_weights(sieve, n, k), kind, sieve);
    const double ratio = static_cast<double>(n) * raw / (counts[k] * counts[k]);
    sweep.ratios[k] = ratio;
    if (!found || ratio < sweep.ratio) {
      found = true;
      sweep.k = k;
      sweep.ratio = ratio;
    }
  }
  sweep.kappa = n >= 3 ? static_cast<double>(sweep.k) / loglog(static_cast<double>(n)) : 0.0;
  return sweep;
}

std::vector<std::uint32_t> geometric_grid(std::uint32_t x_max) {
  if (x_max == 0) throw InvalidArgument("grid bound must be >= 1");
  std::vector<std::uint32_t> grid{1};
  while (grid.back() < x_max) {
    const auto next = static_cast<std::uint32_t>(std::llround(grid.back() * std::sqrt(2.0)));
    grid.push_back(std::min(x_max, std::max(grid.back() + 1, next)));
  }
  return grid;
}

double t0_max_profile(std::uint32_t x_max, const FactorSieve& sieve) {
  if (x_max > sieve.limit()) throw InvalidArgument("profile bound exceeds the sieve limit");
  double best = 0.0;
  for (std::uint32_t x : geometric_grid(x_max)) best = std::max(best, minimize_over_levels(x, GcdKernel::T0, sieve).ratio);
  return best;
}

}  // namespace gcdlab
