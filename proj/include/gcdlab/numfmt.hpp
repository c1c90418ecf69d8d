#pragma once

#include <string>
#include <string_view>

#include "gcdlab/arith.hpp"

namespace gcdlab {

/// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_double(double x);

/// Locale-independent parse; the whole string must be consumed.
double parse_double(std::string_view s);

/// Decimal rendering of a 128-bit unsigned integer.
std::string format_u128(u128 x);

}  // namespace gcdlab
