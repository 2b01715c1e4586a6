#include "veritas/json_util.hpp"

#include <cmath>
#include <limits>

#include "veritas/error.hpp"
#include "veritas/rational.hpp"

namespace veritas {

Json json_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

double number_from_json(const Json& value) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const auto& s = value.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        return to_double(parse_rational(s));
    }
    throw DomainError("expected a number, got " + value.dump());
}

}  // namespace veritas
