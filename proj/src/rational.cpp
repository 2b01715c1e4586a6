#include "veritas/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "veritas/error.hpp"

namespace veritas {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned n) {
    cpp_int out = 1;
    for (unsigned i = 0; i < n; ++i) out *= 10;
    return out;
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    cpp_int digits = 0;
    unsigned fraction_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            any_digit = true;
            if (seen_point) ++fraction_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw DomainError("not a number: '" + std::string(text) + "'");
        const std::string exp_text(s.substr(i + 1));
        std::size_t used = 0;
        try {
            exponent = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != exp_text.size()) throw DomainError("not a number: '" + std::string(text) + "'");
    }
    if (!any_digit) throw DomainError("not a number: '" + std::string(text) + "'");
    if (exponent > 400 || exponent < -400) throw DomainError("exponent out of range: '" + std::string(text) + "'");
    Rational value(digits, pow10(fraction_digits));
    if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
    if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty number");
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

Rational exact_from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("cannot represent a non-finite value exactly");
    return Rational(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace veritas
