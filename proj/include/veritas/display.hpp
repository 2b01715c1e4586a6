#pragma once

#include <string>

namespace veritas {

/// Decimal rendering with `digits` significant figures, keeping trailing zeros ("1.0", "0.050").
std::string format_significant(double value, int digits);

/// Fixed-point rendering with `decimals` places.
std::string format_fixed(double value, int decimals);

/// "4e-03" style rendering used for tiny table cells.
std::string format_scientific(double value, int digits);

/// Value of `value` rounded to `digits` significant figures.
double round_significant(double value, int digits);

}  // namespace veritas
