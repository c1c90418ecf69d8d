#pragma once

#include <cmath>
#include <vector>

#include "gcdlab/weights.hpp"

namespace testsupport {

/// Oracle vectors are 1-based with index 0 unused.
inline gcdlab::WeightVector to_weights(const std::vector<double>& one_based, const char* desc = "test") {
  return gcdlab::WeightVector(std::vector<double>(one_based.begin() + 1, one_based.end()), desc);
}

inline std::vector<double> one_based(const gcdlab::WeightVector& w) {
  std::vector<double> v(w.limit() + 1, 0.0);
  for (std::uint32_t m = 1; m <= w.limit(); ++m) v[m] = w(m);
  return v;
}

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testsupport
