#pragma once

#include <string>

#include "hyperfh/geometry.hpp"
#include "json.hpp"

namespace hyperfh {

using json = nlohmann::json;

cplx complex_from_json(const json& j);  // [re, im] or a bare number
json complex_to_json(cplx c);

/// [re0, im0, re1, im1, re2, im2]
C3 point_from_json(const json& j);
json point_to_json(const C3& z);

/// 17 significant digits, C locale.
std::string fmt17(double v);

}  // namespace hyperfh
