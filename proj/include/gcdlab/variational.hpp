#pragma once

#include <functional>

namespace gcdlab {

/// Q(lambda) = lambda log lambda - lambda + 1, with Q(0) = 1. Throws for lambda < 0.
double Q(double lambda);

/// Minimizers in [0, kappa] of the two-term rate sums. kappa >= 0.
double lambda1(double kappa);  ///< (2k + 1 - sqrt(4k + 1)) / 2
double lambda2(double kappa);  ///< k / 2
double lambda3(double kappa);  ///< (sqrt(4k + 1) - 1) / 2

/// Envelope exponents on 0 < kappa < 2 (InvalidArgument otherwise).
double f0(double kappa);  ///< upper exponent for T1(N, w_k)
double g0(double kappa);  ///< level-set concentration exponent for the T problem
double f(double kappa);   ///< upper exponent for the energy ratio of w_k
double g(double kappa);   ///< concentration exponent for the energy problem

/// The maximizer (1 + sqrt(1 + 4k)) / 2 of Q(rho + k) - 2 Q(rho) over rho >= 1.
double rho_star(double kappa);

/// Piecewise rho_kappa: 1 below kappa_star_T, rho_star between kappa_star_T and
/// kappa2, 1 above kappa2. The breakpoints are passed in so callers choose the solve.
double rho(double kappa, double kappa_star_t, double kappa2);

/// 1 + Q(k) - 2 Q(k - lambda1) - Q(lambda1); its root is kappa_star_T.
double kappa_star_residual(double kappa);
/// Q(k) - Q(rho_star + k) + 2 Q(rho_star); same root.
double kappa1_residual(double kappa);
/// Q(rho_star + k) - 2 Q(rho_star) - (3/8 - 2 Q(rho_star)).
double kappa2_residual(double kappa);

/// Sign-change scan at step 1e-3 on [lo, hi], then bisection to width
/// min(tol, 1e-12). Throws SolverFailure without a sign change.
double find_root(const std::function<double(double)>& fn, double lo, double hi, double tol);

/// Grid scan on [lo, hi] at the given step, then golden-section refinement
/// inside the two cells around the best grid point.
struct Minimum {
  double x;
  double value;
};
Minimum minimize_1d(const std::function<double(double)>& fn, double lo, double hi, double step, double tol);

double solve_kappa_star_T(double tol);
double solve_kappa2(double tol);

/// max{Q(k) - Q(rho_k), min{Q(rho_k + k), 3/8} - 2 Q(rho_k)}.
double delta1_star(double kappa, double kappa_star_t, double kappa2);
/// min over [0, 1] of max{Q(k), min{Q(rho_k + k), 3/8} - 2 Q(rho_k)}.
double delta1(double kappa_star_t, double kappa2, double tol);
/// min over [0, kappa2] of max{Q(k), Q(rho_k + k) - 2 Q(rho_k)}.
double delta2(double kappa_star_t, double kappa2, double tol);

struct VariationalConstants {
  double tol = 0.0;
  double kappa_star_T = 0.0;
  double delta0 = 0.0;          ///< Q(kappa_star_T)
  double second_branch = 0.0;   ///< 2Q(k*) - 2Q(k*/2) + 5/8
  double kappa2 = 0.0;
  double q_one_plus_kappa2 = 0.0;
  double delta2 = 0.0;
  double kappa_star_E = 0.0;    ///< 1 / log 4
  double delta = 0.0;           ///< 2 Q(1 / log 4)
  double delta_closed_form = 0.0;  ///< 1 - (1 + log log 2) / log 2
  double alpha = 0.0;
  double q2 = 0.0;              ///< Q(2) = 2 log 2 - 1
  double residual_kappa_star = 0.0;
  double residual_kappa1 = 0.0;
  double residual_kappa2 = 0.0;
  double residual_kappa_star_E = 0.0;  ///< 1 + 2Q(k) - 4Q(k/2) at 1 / log 4
};

/// Solves and assembles every constant. Throws SolverFailure if
/// 2 Q(1 / log 4) and the closed form for delta differ by more than 1e-12.
VariationalConstants delta_constants(double tol);

}  // namespace gcdlab
