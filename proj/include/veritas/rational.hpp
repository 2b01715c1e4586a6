#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace veritas {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "5/6", "3", "0.25" or "1e-3" exactly (decimal literals become decimal fractions).
Rational parse_rational(std::string_view text);

/// Every finite double is a dyadic rational; this returns it without rounding.
Rational exact_from_double(double value);

double to_double(const Rational& value);

/// "n/d", or "n" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace veritas
