#include "veritas/display.hpp"

#include <cmath>
#include <cstdio>

namespace veritas {

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(value))));
    const double scale = std::pow(10.0, digits - 1 - exponent);
    return std::round(value * scale) / scale;
}

std::string format_significant(double value, int digits) {
    if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    const double rounded = round_significant(value, digits);
    int decimals = digits - 1;
    if (rounded != 0.0) {
        const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(rounded))));
        decimals = digits - 1 - exponent;
    }
    if (decimals < 0) decimals = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

std::string format_fixed(double value, int decimals) {
    if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string format_scientific(double value, int digits) {
    if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits > 0 ? digits - 1 : 0, value);
    return buf;
}

}  // namespace veritas
