#include "mero/format.hpp"

#include <cstdio>

namespace mero {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_point(const SpherePoint& p) {
  if (p.is_infinite()) return "inf,inf";
  return format_double(p.value().real()) + "," + format_double(p.value().imag());
}

}  // namespace mero
