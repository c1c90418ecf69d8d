#include "gcdlab/variational.hpp"

#include <algorithm>
#include <cmath>

#include "gcdlab/errors.hpp"

namespace gcdlab {

double Q(double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("Q needs lambda >= 0");
  if (lambda == 0.0) return 1.0;
  return lambda * std::log(lambda) - lambda + 1.0;
}

namespace {

void require_kappa(double kappa) {
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
}

void require_envelope_domain(double kappa) {
  if (!(kappa > 0.0 && kappa < 2.0)) throw InvalidArgument("kappa must lie in (0, 2)");
}

// Rounding can push kappa - lambda a hair below zero near kappa = 0.
double nonneg(double x) { return std::max(x, 0.0); }

}  // namespace

double lambda1(double kappa) {
  require_kappa(kappa);
  return 0.5 * (2.0 * kappa + 1.0 - std::sqrt(4.0 * kappa + 1.0));
}

double lambda2(double kappa) {
  require_kappa(kappa);
  return 0.5 * kappa;
}

double lambda3(double kappa) {
  require_kappa(kappa);
  return 0.5 * (std::sqrt(4.0 * kappa + 1.0) - 1.0);
}

double g0(double kappa) {
  require_envelope_domain(kappa);
  const double l1 = lambda1(kappa);
  return std::min({2.0 * Q(nonneg(kappa - l1)) + Q(l1) - 1.0, 2.0 * Q(0.5 * kappa) - 0.625, Q(kappa)});
}

double f0(double kappa) { return 2.0 * Q(kappa) - g0(kappa); }

double g(double kappa) {
  require_envelope_domain(kappa);
  const double l3 = lambda3(kappa);
  return std::min({4.0 * Q(0.5 * kappa) - 1.0, Q(nonneg(kappa - l3)) + 2.0 * Q(l3) - 0.625, 2.0 * Q(kappa)});
}

double f(double kappa) { return 4.0 * Q(kappa) - g(kappa); }

double rho_star(double kappa) {
  require_kappa(kappa);
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * kappa));
}

double rho(double kappa, double kappa_star_t, double kappa2) {
  require_kappa(kappa);
  if (kappa < kappa_star_t || kappa > kappa2) return 1.0;
  return rho_star(kappa);
}

double kappa_star_residual(double kappa) {
  const double l1 = lambda1(kappa);
  return 1.0 + Q(kappa) - 2.0 * Q(nonneg(kappa - l1)) - Q(l1);
}

double kappa1_residual(double kappa) {
  const double r = rho_star(kappa);
  return Q(kappa) - Q(r + kappa) + 2.0 * Q(r);
}

double kappa2_residual(double kappa) {
  const double r = rho_star(kappa);
  return Q(r + kappa) - 2.0 * Q(r) - (0.375 - 2.0 * Q(r));
}

double find_root(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(lo < hi)) throw InvalidArgument("empty root interval");
  constexpr double kScan = 1e-3;
  double a = lo, fa = fn(a);
  if (fa == 0.0) return a;
  for (double b = std::min(hi, lo + kScan);; b = std::min(hi, b + kScan)) {
    const double fb = fn(b);
    if (fb == 0.0) return b;
    if ((fa < 0.0) != (fb < 0.0)) {
      const double width = std::min(tol, 1e-12);
      while (b - a > width) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = fn(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    if (b >= hi) break;
    a = b;
    fa = fb;
  }
  throw SolverFailure("no sign change on the scanned interval");
}

Minimum minimize_1d(const std::function<double(double)>& fn, double lo, double hi, double step, double tol) {
  if (!(lo < hi) || !(step > 0.0) || !(tol > 0.0)) throw InvalidArgument("bad minimization interval");
  const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  std::size_t best = 0;
  double best_val = fn(lo);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double v = fn(std::min(hi, lo + static_cast<double>(i) * step));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = std::max(lo, lo + (static_cast<double>(best) - 1.0) * step);
  double b = std::min(hi, lo + (static_cast<double>(best) + 1.0) * step);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double v = fn(x);
  const double grid_x = std::min(hi, lo + static_cast<double>(best) * step);
  if (best_val < v) return {grid_x, best_val};
  return {x, v};
}

double solve_kappa_star_T(double tol) { return find_root(kappa_star_residual, 1e-6, 1.0, tol); }

double solve_kappa2(double tol) { return find_root(kappa2_residual, 1e-6, 1.0, tol); }

double delta1_star(double kappa, double kappa_star_t, double kappa2) {
  const double r = rho(kappa, kappa_star_t, kappa2);
  return std::max(Q(kappa) - Q(r), std::min(Q(r + kappa), 0.375) - 2.0 * Q(r));
}

double delta1(double kappa_star_t, double kappa2, double tol) {
  const auto fn = [&](double k) {
    const double r = rho(k, kappa_star_t, kappa2);
    return std::max(Q(k), std::min(Q(r + k), 0.375) - 2.0 * Q(r));
  };
  return minimize_1d(fn, 0.0, 1.0, 1e-3, tol).value;
}

double delta2(double kappa_star_t, double kappa2, double tol) {
  const auto fn = [&](double k) {
    const double r = rho(k, kappa_star_t, kappa2);
    return std::max(Q(k), Q(r + k) - 2.0 * Q(r));
  };
  return minimize_1d(fn, 0.0, kappa2, 1e-3, tol).value;
}

VariationalConstants delta_constants(double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  VariationalConstants c;
  c.tol = tol;
  c.kappa_star_T = solve_kappa_star_T(tol);
  c.delta0 = Q(c.kappa_star_T);
  c.second_branch = 2.0 * Q(c.kappa_star_T) - 2.0 * Q(0.5 * c.kappa_star_T) + 0.625;
  c.kappa2 = solve_kappa2(tol);
  c.q_one_plus_kappa2 = Q(1.0 + c.kappa2);
  c.delta2 = delta2(c.kappa_star_T, c.kappa2, tol);
  c.kappa_star_E = 1.0 / std::log(4.0);
  c.delta = 2.0 * Q(c.kappa_star_E);
  c.delta_closed_form = 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0);
  const double l3 = lambda3(c.kappa_star_E);
  c.alpha = 4.0 * Q(c.kappa_star_E) - Q(c.kappa_star_E - l3) - 2.0 * Q(l3) + 0.625;
  c.q2 = Q(2.0);
  c.residual_kappa_star = std::abs(kappa_star_residual(c.kappa_star_T));
  c.residual_kappa1 = std::abs(kappa1_residual(c.kappa_star_T));
  c.residual_kappa2 = std::abs(kappa2_residual(c.kappa2));
  c.residual_kappa_star_E = std::abs(1.0 + 2.0 * Q(c.kappa_star_E) - 4.0 * Q(0.5 * c.kappa_star_E));
  if (std::abs(c.delta - c.delta_closed_form) > 1e-12) throw SolverFailure("closed form for delta disagrees");
  return c;
}

}  // namespace gcdlab
