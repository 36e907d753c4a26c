#pragma once

#include <string>

#include "mero/sphere.hpp"

namespace mero {

/// Round-trip decimal form of a double ("%.17g"); "inf"/"-inf"/"nan" as such.
std::string format_double(double x);

/// "re,im" with format_double; "inf,inf" for the point at infinity.
std::string format_point(const SpherePoint& p);

}  // namespace mero
