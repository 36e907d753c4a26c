#pragma once

#include <optional>

#include "mero/map.hpp"

namespace mero {

struct NewtonOptions {
  int max_steps = 50;
  /// Converged when |step| <= step_tolerance * max(1, |z|).
  double step_tolerance = 1e-12;
  /// Accepted only when chordal(f(z), target) < residual_tolerance.
  double residual_tolerance = 1e-9;
};

/// Newton's method for f(z) = target from `seed`. Returns nullopt if the
/// iteration leaves the finite plane, stalls on a zero derivative, fails to
/// converge within max_steps, or converges to a point whose image is not
/// within residual_tolerance of the target.
std::optional<Complex> newton_root(const MeromorphicMap& f, Complex target, Complex seed,
                                   const NewtonOptions& options = {});

}  // namespace mero
