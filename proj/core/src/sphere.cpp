#include "mero/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "mero/error.hpp"

namespace mero {

SpherePoint SpherePoint::finite(Complex z) noexcept {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return infinity();
  SpherePoint p;
  p.value_ = z;
  return p;
}

SpherePoint SpherePoint::guarded(Complex z) noexcept {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return infinity();
  if (std::abs(z) > kOverflowGuard) return infinity();
  SpherePoint p;
  p.value_ = z;
  return p;
}

Complex SpherePoint::value() const {
  if (infinite_) throw DomainError("value() requested for the point at infinity");
  return value_;
}

double SpherePoint::modulus() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : std::abs(value_);
}

double chordal(Complex a, Complex b) noexcept {
  const double d = 2.0 * std::abs(a - b) / (std::hypot(1.0, std::abs(a)) * std::hypot(1.0, std::abs(b)));
  return std::min(d, 2.0);
}

double chordal(const SpherePoint& a, const SpherePoint& b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::hypot(1.0, b.modulus());
  if (b.is_infinite()) return 2.0 / std::hypot(1.0, a.modulus());
  return chordal(a.value(), b.value());
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinite()) return os << "inf";
  return os << p.value();
}

}  // namespace mero
