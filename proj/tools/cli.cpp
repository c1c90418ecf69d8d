#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <variant>

#include "gcdlab/arith.hpp"
#include "gcdlab/dirichlet.hpp"
#include "gcdlab/energy.hpp"
#include "gcdlab/errors.hpp"
#include "gcdlab/gcd_sums.hpp"
#include "gcdlab/numfmt.hpp"
#include "gcdlab/parallel.hpp"
#include "gcdlab/reference.hpp"
#include "gcdlab/small_moments.hpp"
#include "gcdlab/theta.hpp"
#include "gcdlab/variational.hpp"
#include "gcdlab/weights.hpp"

namespace gcdlab::cli {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- output

struct Big {
  u128 v;
};
using Value = std::variant<std::string, double, std::int64_t, std::uint64_t, bool, Big>;
using Row = std::vector<std::pair<std::string, Value>>;

enum class Format { Json, Csv };

std::string csv_cell(const Value& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(std::uint64_t u) const { return std::to_string(u); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(Big b) const { return format_u128(b.v); }
  };
  return std::visit(Visitor{}, v);
}

json json_value(const Value& v) {
  struct Visitor {
    json operator()(const std::string& s) const { return s; }
    json operator()(double d) const { return std::isfinite(d) ? json(d) : json(nullptr); }
    json operator()(std::int64_t i) const { return i; }
    json operator()(std::uint64_t u) const { return u; }
    json operator()(bool b) const { return b; }
    json operator()(Big b) const {
      if (b.v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(b.v);
      return format_u128(b.v);
    }
  };
  return std::visit(Visitor{}, v);
}

class Emitter {
 public:
  Emitter(std::ostream& os, Format format) : os_(os), format_(format) {}

  void row(const Row& r) {
    if (format_ == Format::Json) {
      json obj = json::object();
      for (const auto& [k, v] : r) obj[k] = json_value(v);
      os_ << obj.dump() << '\n';
      return;
    }
    if (!header_written_) {
      for (std::size_t i = 0; i < r.size(); ++i) os_ << (i ? "," : "") << r[i].first;
      os_ << '\n';
      header_written_ = true;
    }
    for (std::size_t i = 0; i < r.size(); ++i) os_ << (i ? "," : "") << csv_cell(r[i].second);
    os_ << '\n';
  }

 private:
  std::ostream& os_;
  Format format_;
  bool header_written_ = false;
};

// --------------------------------------------------------------- weights

struct WeightSpec {
  enum Kind { Ones, Level, Tail, File, OptimalQp, Random } kind = Ones;
  unsigned k = 0;
  std::string path;
  double density = 0.0;
};

WeightSpec parse_weights(const std::string& s) {
  WeightSpec w;
  if (s == "ones") return w;
  if (s == "tail") {
    w.kind = WeightSpec::Tail;
    return w;
  }
  if (s == "optimal-qp") {
    w.kind = WeightSpec::OptimalQp;
    return w;
  }
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon), tail = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "level" && !tail.empty()) {
    w.kind = WeightSpec::Level;
    const double k = parse_double(tail);
    if (k < 0 || k != std::floor(k) || k > 64) throw InvalidArgument("level:k needs an integer k >= 0");
    w.k = static_cast<unsigned>(k);
    return w;
  }
  if (head == "indicator-file" && !tail.empty()) {
    w.kind = WeightSpec::File;
    w.path = tail;
    return w;
  }
  if (head == "random" && !tail.empty()) {
    w.kind = WeightSpec::Random;
    w.density = parse_double(tail);
    if (!(w.density > 0.0 && w.density <= 1.0)) throw InvalidArgument("random:d needs 0 < d <= 1");
    return w;
  }
  throw InvalidArgument("unknown weight selector '" + s + "'");
}

// Portable uniform in (0, 1]; std distributions are implementation-defined.
double unit(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; }

WeightVector random_weights(std::uint32_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n, 0.0);
  for (auto& x : v)
    if (unit(rng) <= density) x = unit(rng);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
  return WeightVector(std::move(v), "random:" + format_double(density) + ":" + std::to_string(seed));
}

WeightVector make_weights(const WeightSpec& spec, const FactorSieve& sieve, std::uint32_t n, std::uint64_t seed) {
  switch (spec.kind) {
    case WeightSpec::Ones: return all_ones(n);
    case WeightSpec::Level: return omega_level_weights(sieve, n, spec.k);
    case WeightSpec::Tail: return omega_tail_weights(sieve, n);
    case WeightSpec::Random: return random_weights(n, spec.density, seed);
    case WeightSpec::File: {
      std::ifstream is(spec.path);
      if (!is) throw InvalidArgument("cannot open weight file " + spec.path);
      return read_weight_csv(is, n, "file:" + spec.path);
    }
    case WeightSpec::OptimalQp: break;
  }
  throw InvalidArgument("optimal-qp weights are only available for gcdsum");
}

// ---------------------------------------------------------------- config

std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream is(path);
  if (!is) throw CLI::FileError("cannot open config file " + path);
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const auto given = [&](const std::string& key) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::string line;
  std::vector<std::string> extra;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ConversionError("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw CLI::ConversionError("bad config key: " + line);
    if (!given(key)) extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// -------------------------------------------------------------- commands

struct Common {
  std::string format = "json";
  std::string out;
  int threads = 0;
  std::uint64_t seed = 1;
  bool timing = false;
};

double secs(const Common& c, double s) { return c.timing ? s : 0.0; }

int cmd_constants(Emitter& em, double tol) {
  const VariationalConstants c = delta_constants(tol);
  em.row({{"tol", c.tol},
          {"kappa_star_T", c.kappa_star_T},
          {"delta0", c.delta0},
          {"second_branch", c.second_branch},
          {"kappa2", c.kappa2},
          {"Q_1_plus_kappa2", c.q_one_plus_kappa2},
          {"delta2", c.delta2},
          {"kappa_star_E", c.kappa_star_E},
          {"delta", c.delta},
          {"delta_closed_form", c.delta_closed_form},
          {"alpha", c.alpha},
          {"Q2", c.q2},
          {"residual_kappa_star", c.residual_kappa_star},
          {"residual_kappa1", c.residual_kappa1},
          {"residual_kappa2", c.residual_kappa2},
          {"residual_kappa_star_E", c.residual_kappa_star_E}});
  return kOk;
}

GcdEvaluator parse_gcd_evaluator(const std::string& s) {
  if (s == "direct") return GcdEvaluator::Direct;
  if (s == "grouped") return GcdEvaluator::DivisorGrouped;
  if (s == "auto") return GcdEvaluator::Auto;
  throw InvalidArgument("evaluator must be direct, grouped or auto");
}

EnergyEvaluator parse_energy_evaluator(const std::string& s) {
  if (s == "quadruple") return EnergyEvaluator::Quadruple;
  if (s == "histogram") return EnergyEvaluator::Histogram;
  if (s == "parametrized") return EnergyEvaluator::Parametrized;
  if (s == "auto") return EnergyEvaluator::Auto;
  throw InvalidArgument("evaluator must be quadruple, histogram, parametrized or auto");
}

struct GcdArgs {
  std::uint32_t n = 0;
  std::string kind = "T1";
  std::string weights = "ones";
  std::string evaluator = "auto";
  bool sweep = false;
  double tol = 1e-8;
};

int cmd_gcdsum(Emitter& em, const Common& c, const GcdArgs& a) {
  const GcdKernel kind = parse_gcd_kernel(a.kind);
  const GcdEvaluator ev = parse_gcd_evaluator(a.evaluator);
  const FactorSieve sieve(std::max<std::uint32_t>(a.n, 2));
  if (a.sweep) {
    const LevelSweep s = minimize_over_levels(a.n, kind, sieve);
    const double ll = a.n >= 3 ? loglog(a.n) : std::numeric_limits<double>::quiet_NaN();
    for (unsigned k = 0; k < s.ratios.size(); ++k) {
      if (std::isnan(s.ratios[k])) continue;
      em.row({{"N", std::uint64_t{a.n}}, {"kind", std::string(to_string(kind))}, {"k", std::uint64_t{k}},
              {"kappa", k / ll}, {"ratio", s.ratios[k]}, {"argmin", k == s.k}});
    }
    return kOk;
  }
  const WeightSpec spec = parse_weights(a.weights);
  GcdSumReport r;
  if (spec.kind == WeightSpec::OptimalQp) {
    const auto start = std::chrono::steady_clock::now();
    const GcdMinimum m = exact_minimize(a.n, kind, sieve, a.tol);
    r = normalized_ratio(m.weights, kind, sieve, ev);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } else {
    r = normalized_ratio(make_weights(spec, sieve, a.n, c.seed), kind, sieve, ev);
  }
  em.row({{"N", std::uint64_t{r.n}}, {"kind", std::string(to_string(r.kind))}, {"weight_desc", r.weight_desc},
          {"raw", r.raw}, {"ratio", r.ratio}, {"seconds", secs(c, r.seconds)}});
  return kOk;
}

struct EnergyArgs {
  std::uint32_t n = 0;
  std::string weights = "ones";
  std::string evaluator = "auto";
  bool sweep = false;
};

int cmd_energy(Emitter& em, const Common& c, const EnergyArgs& a) {
  const FactorSieve sieve(std::max<std::uint32_t>(a.n, 2));
  if (a.sweep) {
    const LevelSweep s = minimize_energy_over_levels(a.n, sieve);
    const auto energies = level_energies(sieve, a.n);
    const double ll = a.n >= 3 ? loglog(a.n) : std::numeric_limits<double>::quiet_NaN();
    for (unsigned k = 0; k < s.ratios.size(); ++k) {
      if (std::isnan(s.ratios[k])) continue;
      em.row({{"N", std::uint64_t{a.n}}, {"k", std::uint64_t{k}}, {"kappa", k / ll}, {"energy", Big{energies[k]}},
              {"ratio", s.ratios[k]}, {"argmin", k == s.k}});
    }
    return kOk;
  }
  const WeightVector w = make_weights(parse_weights(a.weights), sieve, a.n, c.seed);
  const EnergyReport r = energy_report(w, parse_energy_evaluator(a.evaluator));
  Value v = r.value.exact ? Value(Big{r.value.integer}) : Value(r.value.real);
  em.row({{"N", std::uint64_t{r.n}}, {"weight_desc", r.weight_desc}, {"energy", v}, {"ratio", r.ratio},
          {"evaluator", std::string(to_string(r.evaluator))}, {"seconds", secs(c, r.seconds)}});
  return kOk;
}

int cmd_multable(Emitter& em, std::uint32_t n, bool powers) {
  std::vector<std::uint32_t> ns;
  if (powers)
    for (std::uint32_t x = 2; x <= n; x *= 2) ns.push_back(x);
  else
    ns.push_back(n);
  for (std::uint32_t x : ns) {
    const std::uint64_t a = multiplication_table_count(x);
    em.row({{"N", std::uint64_t{x}}, {"A", a}, {"density", static_cast<double>(x) * x / static_cast<double>(a)}});
  }
  return kOk;
}

int cmd_levels(Emitter& em, std::uint32_t n, double kappa0) {
  const FactorSieve sieve(n);
  for (const LevelMass& row : level_mass_profile(sieve, n, kappa0))
    em.row({{"N", std::uint64_t{n}}, {"k", std::uint64_t{row.k}}, {"kappa", row.kappa}, {"l1", row.l1},
            {"mass_ratio", row.ratio}, {"in_range", row.in_range}});
  return kOk;
}

int cmd_charsum(Emitter& em, std::uint64_t p, std::uint32_t chi, std::uint64_t m, std::uint64_t n) {
  const CharacterTable table(p);
  const cplx s = char_sum(Character(table, chi), m, n);
  em.row({{"p", p}, {"chi", std::uint64_t{chi}}, {"M", m}, {"N", n}, {"re", s.real()}, {"im", s.imag()},
          {"abs", std::abs(s)}});
  return kOk;
}

int cmd_burgess(Emitter& em, std::uint64_t p, std::uint64_t n, unsigned r, std::uint64_t stride) {
  const CharacterTable table(p);
  if (n == 0) n = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(p), 0.55)));
  const FactorSieve sieve(p);
  const double t0max = t0_max_profile(static_cast<std::uint32_t>(p), sieve);
  const BurgessReport rep = burgess_scan(table, n, r, t0max, stride);
  em.row({{"p", rep.p}, {"r", std::uint64_t{rep.r}}, {"N", rep.n}, {"A", rep.params.a}, {"B", rep.params.b},
          {"maxS", rep.max_s}, {"envelope", rep.envelope}, {"ratio", rep.ratio}, {"pv_ratio", rep.pv_ratio}});
  return kOk;
}

struct ThetaArgs {
  std::uint64_t p = 0;
  double x = 1.0;
  std::string weights = "ones";
  double threshold = 1e-8;
  std::uint64_t scan = 0;
};

int cmd_theta(Emitter& em, const Common& c, const ThetaArgs& a) {
  if (a.scan > 0) {
    for (std::uint64_t p = 3; p <= a.scan; p += 2) {
      if (!is_prime(p)) continue;
      const CharacterTable table(p);
      const NonvanishingResult nv = nonvanishing_count(table, a.x, a.threshold);
      const LowerBoundReport lb = lower_bound_report(table, a.x);
      em.row({{"p", p}, {"x", a.x}, {"M0", nv.count}, {"undetermined", nv.undetermined},
              {"min_abs", nv.min_abs_nonprincipal}, {"max_tail", nv.max_tail}, {"k", std::uint64_t{lb.k}},
              {"floor", lb.floor}});
    }
    return kOk;
  }
  const CharacterTable table(a.p);
  const auto cutoff = static_cast<std::uint32_t>(mollifier_cutoff(a.p));
  if (cutoff == 0) throw DomainError("mollifier cutoff is empty");
  const FactorSieve sieve(std::max<std::uint32_t>(cutoff, 2));
  const WeightVector w = make_weights(parse_weights(a.weights), sieve, cutoff, c.seed);
  const MomentReport r = moments(table, a.x, w, a.threshold);
  em.row({{"p", r.p}, {"x", r.x}, {"weight_desc", r.weight_desc}, {"cutoff", r.cutoff}, {"M1_re", r.m1.real()},
          {"M1_im", r.m1.imag()}, {"M1_abs", std::abs(r.m1)}, {"M2", r.m2}, {"M4_direct", r.m4_direct},
          {"M4_identity", r.m4_identity}, {"M0", r.m0}, {"undetermined", r.undetermined},
          {"M1_diagonal", r.m1_diagonal}, {"holder_slack", r.holder_slack}});
  return kOk;
}

struct MomentArgs {
  std::uint64_t p = 0;
  std::uint32_t n = 0;
  std::vector<double> r{1.4, 1.5, 1.75, 1.9};
  std::string weights = "ones";
};

int cmd_moments(Emitter& em, const Common& c, const MomentArgs& a) {
  const CharacterTable table(a.p);
  const FactorSieve sieve(std::max<std::uint32_t>(a.n, 2));
  const WeightVector w = make_weights(parse_weights(a.weights), sieve, a.n, c.seed);
  for (double r : a.r) {
    const HolderChainReport h = holder_chain_check(table, r, w);
    em.row({{"p", h.p}, {"N", h.n}, {"r", h.r}, {"S1", h.s1}, {"S2", h.s2}, {"Sr", h.sr}, {"M4", h.m4},
            {"slack", h.slack}, {"lower_bound", h.lower_bound}});
  }
  return kOk;
}

// ----------------------------------------------------------------- check

struct CheckResult {
  std::string name;
  bool passed;
  double max_error;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::vector<CheckResult> check_gcd(std::uint64_t seed) {
  const FactorSieve sieve(300);
  double err_grouped = 0.0, err_ref = 0.0;
  for (std::uint32_t t = 0; t < 20; ++t) {
    const std::uint32_t n = 20 + 14 * t;
    const WeightVector w = random_weights(n, 0.3, seed + t);
    for (GcdKernel kind : {GcdKernel::T0, GcdKernel::T1}) {
      const double d = gcd_quadratic_form(w, kind, sieve, GcdEvaluator::Direct);
      err_grouped = std::max(err_grouped, rel_err(d, gcd_quadratic_form(w, kind, sieve, GcdEvaluator::DivisorGrouped)));
      err_ref = std::max(err_ref, rel_err(d, reference::gcd_quadratic_form(w, kind)));
    }
  }
  double err_levels = 0.0;
  const auto forms = t1_level_forms(300, sieve);
  for (unsigned k = 0; k < forms.size(); ++k) {
    const WeightVector w = omega_level_weights(sieve, 300, k);
    if (w.is_zero()) continue;
    err_levels = std::max(err_levels, rel_err(forms[k], gcd_quadratic_form(w, GcdKernel::T1, sieve, GcdEvaluator::Direct)));
  }
  return {{"gcd.grouped_vs_direct", err_grouped <= 1e-9, err_grouped},
          {"gcd.direct_vs_reference", err_ref <= 1e-9, err_ref},
          {"gcd.level_forms", err_levels <= 1e-9, err_levels}};
}

std::vector<CheckResult> check_energy(std::uint64_t seed) {
  const FactorSieve sieve(80);
  std::size_t mismatches = 0;
  for (std::uint32_t n = 1; n <= 80; n += 7) {
    const auto levels = level_energies(sieve, n);
    for (unsigned k = 0; k < levels.size(); ++k) {
      const WeightVector w = omega_level_weights(sieve, n, k);
      if (w.is_zero()) continue;
      const EnergyValue q = energy_quadruple(w);
      if (!(q == energy_histogram(w) && q == energy_parametrized(w) && q == reference::energy_histogram(w) &&
            q.integer == levels[k]))
        ++mismatches;
    }
  }
  double err_real = 0.0;
  for (std::uint32_t t = 0; t < 10; ++t) {
    const WeightVector w = random_weights(60, 0.4, seed + t);
    const double q = energy_quadruple(w).as_double();
    err_real = std::max({err_real, rel_err(q, energy_histogram(w).as_double()),
                         rel_err(q, energy_parametrized(w).as_double()),
                         rel_err(q, reference::energy_parametrized(w).as_double())});
  }
  std::size_t table_mismatch = 0;
  for (std::uint32_t n = 1; n <= 200; n += 13)
    if (multiplication_table_count(n) != reference::multiplication_table_count(n)) ++table_mismatch;
  return {{"energy.exact_evaluators", mismatches == 0, static_cast<double>(mismatches)},
          {"energy.real_evaluators", err_real <= 1e-9, err_real},
          {"energy.multiplication_table", table_mismatch == 0, static_cast<double>(table_mismatch)}};
}

std::vector<CheckResult> check_dirichlet() {
  double mult_err = 0.0;
  for (std::uint64_t p : {3, 5, 7, 11, 13, 31}) {
    const CharacterTable table(p);
    for (std::uint32_t a = 0; a < table.order(); ++a) {
      const Character chi(table, a);
      for (std::uint64_t m = 1; m < p; ++m)
        for (std::uint64_t n = 1; n < p; ++n) mult_err = std::max(mult_err, std::abs(chi(m * n) - chi(m) * chi(n)));
    }
  }
  const CharacterTable t101(101);
  const double scan = burgess_scan(t101, 15, 2, 1.0, 7).max_s;
  const double ref = reference::burgess_max(t101, 15, 7);
  std::size_t cc_mismatch = 0;
  const std::uint64_t p = 101, m = 5, n = 10;
  for (std::uint64_t a1 = 1; a1 <= 3; ++a1)
    for (std::uint64_t a2 = 1; a2 <= 3; ++a2) {
      std::uint64_t brute = 0;
      for (std::uint64_t n1 = m + 1; n1 <= m + n; ++n1)
        for (std::uint64_t n2 = m + 1; n2 <= m + n; ++n2) brute += (n1 * a1) % p == (n2 * a2) % p;
      if (brute != congruence_count(p, a1, a2, m, n)) ++cc_mismatch;
    }
  return {{"dirichlet.multiplicativity", mult_err <= 1e-9, mult_err},
          {"dirichlet.burgess_scan_vs_reference", rel_err(scan, ref) <= 1e-9, rel_err(scan, ref)},
          {"dirichlet.congruence_count", cc_mismatch == 0, static_cast<double>(cc_mismatch)}};
}

std::vector<CheckResult> check_theta() {
  double theta_err = 0.0, m4_err = 0.0;
  for (std::uint64_t p : {13, 29, 101}) {
    const CharacterTable table(p);
    const auto fast = theta_even(table, 1.0);
    const auto slow = reference::theta_even(table, 1.0);
    for (std::size_t i = 0; i < fast.size(); ++i) theta_err = std::max(theta_err, std::abs(fast[i].value - slow[i]));
    const auto cutoff = static_cast<std::uint32_t>(mollifier_cutoff(p));
    const MomentReport r = moments(table, 1.0, all_ones(cutoff));
    m4_err = std::max(m4_err, rel_err(r.m4_direct, r.m4_identity));
  }
  return {{"theta.direct_vs_reference", theta_err <= 1e-12, theta_err},
          {"theta.m4_identity", m4_err <= 1e-6, m4_err}};
}

std::vector<CheckResult> check_moments() {
  double err = 0.0;
  for (std::uint64_t p : {11, 13, 31}) {
    const CharacterTable table(p);
    for (std::uint64_t n = 1; n < p; ++n) {
      const double dn = static_cast<double>(n);
      err = std::max(err, std::abs(char_moment(table, n, 2.0) - (dn - dn * dn / static_cast<double>(p - 1))));
    }
  }
  return {{"moments.s2_closed_form", err <= 1e-9, err}};
}

std::vector<CheckResult> check_variational() {
  const VariationalConstants c = delta_constants(1e-12);
  const double res = std::max({c.residual_kappa_star, c.residual_kappa1, c.residual_kappa2});
  return {{"variational.residuals", res <= 1e-9, res},
          {"variational.delta_closed_form", std::abs(c.delta - c.delta_closed_form) <= 1e-12,
           std::abs(c.delta - c.delta_closed_form)}};
}

int cmd_check(Emitter& em, const Common& c, const std::string& module) {
  static const std::vector<std::string> modules{"gcd", "energy", "dirichlet", "theta", "moments", "variational"};
  if (module != "all" && std::find(modules.begin(), modules.end(), module) == modules.end())
    throw InvalidArgument("unknown check module '" + module + "'");
  std::vector<CheckResult> results;
  const auto add = [&](const std::string& name, const std::function<std::vector<CheckResult>()>& fn) {
    if (module != "all" && module != name) return;
    for (auto& r : fn()) results.push_back(std::move(r));
  };
  add("gcd", [&] { return check_gcd(c.seed); });
  add("energy", [&] { return check_energy(c.seed); });
  add("dirichlet", check_dirichlet);
  add("theta", check_theta);
  add("moments", check_moments);
  add("variational", check_variational);
  bool ok = true;
  for (const auto& r : results) {
    em.row({{"check", r.name}, {"passed", r.passed}, {"max_error", r.max_error}});
    ok = ok && r.passed;
  }
  return ok ? kOk : kFailure;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for weighted GCD sums and multiplicative energy", "gcdlab"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", common.out, "write reports to this path");
  app.add_option("--threads", common.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", common.seed, "seed for random weights");
  app.add_flag("--timing", common.timing, "report wall times (otherwise 0, for byte-identical output)");
  app.add_option("--config", "key=value file; command-line flags win");

  double tol_constants = 1e-12;
  auto* constants = app.add_subcommand("constants", "solved constants of the variational problems");
  constants->add_option("--tol", tol_constants)->check(CLI::PositiveNumber);

  GcdArgs gcd_args;
  auto* gcdsum = app.add_subcommand("gcdsum", "normalized GCD-sum ratio T0/T1");
  gcdsum->add_option("--N", gcd_args.n)->required()->check(CLI::Range(1u, 1u << 26));
  gcdsum->add_option("--kind", gcd_args.kind)->check(CLI::IsMember({"T0", "T1"}));
  gcdsum->add_option("--weights", gcd_args.weights, "ones|level:k|tail|indicator-file:PATH|optimal-qp|random:d");
  gcdsum->add_option("--evaluator", gcd_args.evaluator)->check(CLI::IsMember({"direct", "grouped", "auto"}));
  gcdsum->add_flag("--sweep", gcd_args.sweep, "one row per level k");
  gcdsum->add_option("--tol", gcd_args.tol)->check(CLI::PositiveNumber);

  EnergyArgs energy_args;
  auto* energy_cmd = app.add_subcommand("energy", "weighted multiplicative energy");
  energy_cmd->add_option("--N", energy_args.n)->required()->check(CLI::Range(1u, 1u << 26));
  energy_cmd->add_option("--weights", energy_args.weights, "ones|level:k|tail|indicator-file:PATH|random:d");
  energy_cmd->add_option("--evaluator", energy_args.evaluator)
      ->check(CLI::IsMember({"quadruple", "histogram", "parametrized", "auto"}));
  energy_cmd->add_flag("--sweep", energy_args.sweep, "one row per level k");

  std::uint32_t table_n = 0;
  bool powers = false;
  auto* multable = app.add_subcommand("multable", "distinct products of the N x N multiplication table");
  multable->add_option("--N", table_n)->required()->check(CLI::Range(1u, 1u << 16));
  multable->add_flag("--powers", powers, "scan N = 2, 4, ..., up to --N");

  std::uint32_t levels_n = 0;
  double kappa0 = 0.05;
  auto* levels = app.add_subcommand("levels", "sizes of the level sets Omega(m) = k against their Q(kappa) scale");
  levels->add_option("--N", levels_n)->required()->check(CLI::Range(3u, 1u << 28));
  levels->add_option("--kappa0", kappa0, "trend range [kappa0, 2 - kappa0]")->check(CLI::Range(1e-9, 1.0 - 1e-9));

  std::uint64_t cs_p = 0, cs_m = 0, cs_n = 0;
  std::uint32_t cs_chi = 1;
  auto* charsum = app.add_subcommand("charsum", "character sum S_chi(M, N)");
  charsum->add_option("--p", cs_p)->required();
  charsum->add_option("--chi", cs_chi, "character index in [0, p-2]");
  charsum->add_option("--M", cs_m);
  charsum->add_option("--N", cs_n)->required()->check(CLI::PositiveNumber);

  std::uint64_t bg_p = 0, bg_n = 0, bg_stride = 0;
  unsigned bg_r = 2;
  auto* burgess = app.add_subcommand("burgess", "max |S_chi(M, N)| against the Burgess envelope");
  burgess->add_option("--p", bg_p)->required();
  burgess->add_option("--N", bg_n, "interval length (default floor(p^0.55))");
  burgess->add_option("--r", bg_r)->check(CLI::PositiveNumber);
  burgess->add_option("--stride", bg_stride, "scan M in multiples of stride (0 scans every M)");

  ThetaArgs theta_args;
  auto* theta_cmd = app.add_subcommand("theta", "theta values and mollified moments over even characters");
  auto* theta_p = theta_cmd->add_option("--p", theta_args.p);
  theta_cmd->add_option("--x", theta_args.x)->check(CLI::PositiveNumber);
  theta_cmd->add_option("--weights", theta_args.weights, "ones|level:k|tail|indicator-file:PATH|random:d");
  theta_cmd->add_option("--threshold", theta_args.threshold)->check(CLI::PositiveNumber);
  auto* theta_scan = theta_cmd->add_option("--scan", theta_args.scan, "one row per prime up to this bound");
  theta_p->excludes(theta_scan);

  MomentArgs moment_args;
  auto* moments_cmd = app.add_subcommand("moments", "small character-sum moments and the Holder chain");
  moments_cmd->add_option("--p", moment_args.p)->required();
  moments_cmd->add_option("--N", moment_args.n)->required()->check(CLI::PositiveNumber);
  moments_cmd->add_option("--r", moment_args.r, "exponents in (4/3, 2)");
  moments_cmd->add_option("--weights", moment_args.weights, "ones|level:k|tail|indicator-file:PATH|random:d");

  std::string check_module = "all";
  auto* check = app.add_subcommand("check", "oracle-equivalence self-checks");
  check->add_option("module", check_module, "gcd|energy|dirichlet|theta|moments|variational|all");

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (theta_cmd->parsed() && theta_args.scan == 0 && theta_args.p == 0) {
    err << "theta: --p or --scan is required\n";
    return kUsage;
  }

  std::ofstream file;
  std::ostream* dest = &out;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) {
      emit_error(err, "io", "cannot open " + common.out);
      return kFailure;
    }
    dest = &file;
  }
  if (common.threads > 0) set_threads(common.threads);
  Emitter em(*dest, common.format == "csv" ? Format::Csv : Format::Json);

  try {
    if (constants->parsed()) return cmd_constants(em, tol_constants);
    if (gcdsum->parsed()) return cmd_gcdsum(em, common, gcd_args);
    if (energy_cmd->parsed()) return cmd_energy(em, common, energy_args);
    if (multable->parsed()) return cmd_multable(em, table_n, powers);
    if (levels->parsed()) return cmd_levels(em, levels_n, kappa0);
    if (charsum->parsed()) return cmd_charsum(em, cs_p, cs_chi, cs_m, cs_n);
    if (burgess->parsed()) return cmd_burgess(em, bg_p, bg_n, bg_r, bg_stride);
    if (theta_cmd->parsed()) return cmd_theta(em, common, theta_args);
    if (moments_cmd->parsed()) return cmd_moments(em, common, moment_args);
    if (check->parsed()) return cmd_check(em, common, check_module);
  } catch (const InvalidArgument& e) {
    emit_error(err, "invalid-argument", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    emit_error(err, "domain-error", e.what());
    return kFailure;
  } catch (const ResourceLimit& e) {
    emit_error(err, "resource-limit", e.what());
    return kFailure;
  } catch (const SolverFailure& e) {
    emit_error(err, "solver-failure", e.what());
    return kFailure;
  } catch (const ConvergenceFailure& e) {
    emit_error(err, "convergence-failure", e.what());
    return kFailure;
  }
  return kUsage;
}

}  // namespace gcdlab::cli
