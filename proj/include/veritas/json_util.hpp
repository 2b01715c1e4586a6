#pragma once

#include <json.hpp>

namespace veritas {

/// Insertion-ordered JSON keeps output keys stable and findings in file order.
using Json = nlohmann::ordered_json;

/// Numbers pass through; infinities and NaN become the strings "inf", "-inf", "nan".
Json json_number(double value);

/// Inverse of json_number; also accepts numeric strings such as "5/6".
double number_from_json(const Json& value);

}  // namespace veritas
