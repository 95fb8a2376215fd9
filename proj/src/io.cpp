#include "hyperfh/io.hpp"

#include <cstdio>

namespace hyperfh {

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw Error(ErrorCode::ParseError, "complex value must be [re, im]: " + j.dump());
}

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

C3 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(ErrorCode::ParseError, "point must be a 6-array: " + j.dump());
  C3 z;
  for (int k = 0; k < 3; ++k) {
    if (!j[2 * k].is_number() || !j[2 * k + 1].is_number())
      throw Error(ErrorCode::ParseError, "point entries must be numbers");
    z[k] = cplx(j[2 * k].get<double>(), j[2 * k + 1].get<double>());
  }
  return z;
}

json point_to_json(const C3& z) {
  return json::array({z[0].real(), z[0].imag(), z[1].real(), z[1].imag(), z[2].real(), z[2].imag()});
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace hyperfh
