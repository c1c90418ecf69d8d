#pragma once

#include <cstddef>
#include <span>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace gcdlab {

inline int max_threads() noexcept {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) noexcept {
#if defined(_OPENMP)
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// Tree summation. Error grows like O(log n) ulps instead of O(n).
/// Kernels write per-row partials and reduce them here, so results do not
/// depend on the thread count.
inline double pairwise_sum(std::span<const double> v) noexcept {
  constexpr std::size_t kBlock = 32;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace gcdlab
