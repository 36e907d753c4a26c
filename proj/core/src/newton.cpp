#include "mero/newton.hpp"

#include <cmath>

namespace mero {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

std::optional<Complex> newton_root(const MeromorphicMap& f, Complex target, Complex seed,
                                   const NewtonOptions& options) {
  Complex z = seed;
  for (int step = 0; step < options.max_steps; ++step) {
    if (f.is_pole(z)) return std::nullopt;
    const Complex value = f.raw(z);
    const Complex slope = f.derivative_at(z);
    if (!finite(value) || !finite(slope) || slope == Complex{}) return std::nullopt;
    const Complex delta = (value - target) / slope;
    if (!finite(delta)) return std::nullopt;
    z -= delta;
    if (!finite(z) || std::abs(z) > 1e12) return std::nullopt;
    if (std::abs(delta) <= options.step_tolerance * std::max(1.0, std::abs(z))) {
      if (chordal(f(z), SpherePoint::finite(target)) < options.residual_tolerance) return z;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace mero
