#include "gcdlab/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcdlab/errors.hpp"
#include "gcdlab/parallel.hpp"

namespace gcdlab {

namespace {

class KernelColumns {
 public:
  KernelColumns(std::size_t n, const KernelEntry& kernel, std::size_t dense_limit)
      : n_(n), kernel_(kernel), dense_(n <= dense_limit) {
    if (dense_) {
      matrix_.resize(n * n);
#pragma omp parallel for schedule(dynamic, 16)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          const double v = kernel_(i, j);
          matrix_[i * n + j] = v;
          matrix_[j * n + i] = v;
        }
    }
  }

  double entry(std::size_t i, std::size_t j) const { return dense_ ? matrix_[i * n_ + j] : kernel_(i, j); }

  // out += scale * (K[:, s] - K[:, a])
  void axpy_difference(std::size_t s, std::size_t a, double scale, std::vector<double>& out) const {
    const auto n = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      out[ui] += scale * (entry(ui, s) - entry(ui, a));
    }
  }

  // out = 2 K x
  void gradient(const std::vector<double>& x, std::vector<double>& out) const {
    const auto n = static_cast<std::ptrdiff_t>(n_);
    std::vector<double> row(n_);
#pragma omp parallel for schedule(dynamic, 16) firstprivate(row)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      for (std::size_t j = 0; j < n_; ++j) row[j] = entry(ui, j) * x[j];
      out[ui] = 2.0 * pairwise_sum(row);
    }
  }

 private:
  std::size_t n_;
  const KernelEntry& kernel_;
  bool dense_;
  std::vector<double> matrix_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = a[i] * b[i];
  return pairwise_sum(t);
}

}  // namespace

SimplexQpResult minimize_on_simplex(std::size_t n, const KernelEntry& kernel, const SimplexQpOptions& options) {
  if (n == 0) throw InvalidArgument("empty QP");
  if (!(options.tol > 0.0)) throw InvalidArgument("QP tolerance must be positive");

  const KernelColumns columns(n, kernel, options.dense_limit);
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> grad(n);
  columns.gradient(x, grad);
  double value = 0.5 * dot(x, grad);
  double gap = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    if (iter > 0 && iter % options.refresh_every == 0) {
      columns.gradient(x, grad);
      value = 0.5 * dot(x, grad);
    }

    std::size_t toward = 0, away = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (grad[i] < grad[toward]) toward = i;
      if (x[i] > 0.0 && (away == n || grad[i] > grad[away])) away = i;
    }
    gap = dot(x, grad) - grad[toward];
    if (gap <= options.tol * value) return {std::move(x), value, gap, iter};

    const double slope = grad[toward] - grad[away];
    if (!(slope < 0.0)) return {std::move(x), value, gap, iter};  // stationary to rounding
    const double curvature =
        2.0 * (columns.entry(toward, toward) + columns.entry(away, away) - 2.0 * columns.entry(toward, away));
    double step = x[away];
    if (curvature > 0.0) step = std::min(step, -slope / curvature);

    x[toward] += step;
    if (step == x[away])
      x[away] = 0.0;
    else
      x[away] -= step;
    columns.axpy_difference(toward, away, 2.0 * step, grad);
    value += step * slope + 0.5 * step * step * curvature;
  }
  throw ConvergenceFailure("simplex QP did not reach the gap target", std::move(x), value, gap);
}

}  // namespace gcdlab
