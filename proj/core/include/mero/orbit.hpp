#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mero/error.hpp"
#include "mero/map.hpp"

namespace mero {

inline constexpr double kDefaultEscapeRadius = 1e6;
inline constexpr double kDefaultPoleEps = 1e-9;
inline constexpr int kDefaultClassifyWindow = 16;

enum class TerminalEvent { Completed, HitInfinity };

/// A finite forward orbit. points[0] is the start; when the orbit reaches
/// infinity the infinite entry is the last one.
struct OrbitRecord {
  Complex start;
  std::vector<SpherePoint> points;
  TerminalEvent terminal_event = TerminalEvent::Completed;
  std::size_t event_step = 0;  ///< index of the infinite entry, if any
  /// Some entry was within pole_eps of (or exactly on) a declared pole.
  bool pole_hit = false;
  double escape_radius = kDefaultEscapeRadius;
  double pole_eps = kDefaultPoleEps;
  /// Per-point label: "", "outer", "near-pole", or a region name.
  std::vector<std::string> annotations;

  /// Builds a record from explicit values (synthetic orbits in experiments
  /// and tests). Infinite entries terminate the record.
  static OrbitRecord from_points(std::span<const SpherePoint> values,
                                 double escape_radius = kDefaultEscapeRadius,
                                 double pole_eps = kDefaultPoleEps);
};

/// Iterates `map` from z0 for up to max_steps steps. Requires max_steps >= 1,
/// pole_eps > 0 and escape_radius > max pole modulus + 1 (DomainError).
OrbitRecord iterate(const MeromorphicMap& map, Complex z0, int max_steps,
                    double pole_eps = kDefaultPoleEps,
                    double escape_radius = kDefaultEscapeRadius);

/// Same as `iterate` for any callable Complex -> SpherePoint with the given
/// declared poles.
template <class Step>
OrbitRecord iterate_with(const Step& step, std::span<const Complex> poles, Complex z0,
                         int max_steps, double pole_eps, double escape_radius);

enum class OrbitClass { Bounded, Escaping, BungeeSuspect, HitPole, Undecided };

std::string to_string(OrbitClass c);

/// Exactly one label per orbit:
///  - hit-pole: the orbit came within pole_eps of a declared pole;
///  - escaping: the last `window` moduli all exceed escape_radius and are
///    nondecreasing; for an orbit that overflowed to infinity, the (possibly
///    shorter) tail ending at infinity is nondecreasing;
///  - bounded: every modulus is below escape_radius;
///  - bungee-suspect: the last window holds a modulus above escape_radius and
///    one below escape_radius / 4;
///  - undecided otherwise.
/// Throws DomainError when window < 1 or, for a completed orbit, when the
/// window is longer than the orbit.
OrbitClass classify(const OrbitRecord& orbit, int window = kDefaultClassifyWindow);

struct PingPongParams {
  double delta = 0.1;             ///< "close to the pole" radius
  double escape_radius = 100.0;   ///< "close to infinity" threshold
  int max_gap = 4;                ///< M
  int min_alternations = 3;       ///< K_min
};

struct PingPongVerdict {
  bool detected = false;
  Complex pole;
  std::vector<std::size_t> m_indices;  ///< visits within delta of the pole
  std::vector<std::size_t> n_indices;  ///< visits beyond escape_radius
  int gap_bound = 0;
};

/// Finite-threshold ping-pong test. For each pole (in order) it scans for the
/// earliest chain m_1 < n_1 < m_2 < n_2 < ... with |points[m_k] - p| < delta,
/// |points[n_k]| > escape_radius, consecutive gaps <= max_gap, picked greedily
/// as the first admissible index. A chain is accepted when it has at least
/// min_alternations (m, n) pairs and is not broken before the end of the orbit
/// (its last index is within max_gap of the final entry). Among poles the
/// chain starting earliest wins.
/// Requires delta > 0, escape_radius > delta + max |p|, max_gap >= 1 and
/// min_alternations >= 2 (DomainError).
PingPongVerdict detect_ping_pong(const OrbitRecord& orbit, std::span<const Complex> poles,
                                 const PingPongParams& params = {});

std::vector<Complex> pole_locations(const MeromorphicMap& map);

/// CSV with columns step,re,im,modulus,annotation. Infinite entries are
/// written as re=inf, im=inf, modulus=inf.
void write_orbit_csv(std::ostream& os, const OrbitRecord& orbit);

// ---------------------------------------------------------------------------

template <class Step>
OrbitRecord iterate_with(const Step& step, std::span<const Complex> poles, Complex z0,
                         int max_steps, double pole_eps, double escape_radius) {
  if (max_steps < 1) throw DomainError("iterate needs max_steps >= 1");
  if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag())) throw DomainError("orbit start must be finite");
  if (!(pole_eps > 0.0)) throw DomainError("iterate needs pole_eps > 0");
  double max_pole = 0.0;
  for (Complex p : poles) max_pole = std::max(max_pole, std::abs(p));
  if (!(escape_radius > max_pole + 1.0)) {
    throw DomainError("escape radius must exceed the largest pole modulus plus one");
  }

  OrbitRecord orbit;
  orbit.start = z0;
  orbit.escape_radius = escape_radius;
  orbit.pole_eps = pole_eps;
  orbit.points.reserve(static_cast<std::size_t>(max_steps) + 1);
  orbit.annotations.reserve(static_cast<std::size_t>(max_steps) + 1);

  auto annotate = [&](const SpherePoint& p) {
    if (p.is_infinite()) {
      orbit.annotations.emplace_back();
      return;
    }
    const Complex z = p.value();
    for (Complex pole : poles) {
      if (std::abs(z - pole) < pole_eps) {
        orbit.pole_hit = true;
        orbit.annotations.emplace_back("near-pole");
        return;
      }
    }
    orbit.annotations.emplace_back(std::abs(z) > escape_radius ? "outer" : "");
  };

  SpherePoint current = SpherePoint::finite(z0);
  orbit.points.push_back(current);
  annotate(current);
  for (int k = 1; k <= max_steps; ++k) {
    current = step(current.value());
    orbit.points.push_back(current);
    annotate(current);
    if (current.is_infinite()) {
      orbit.terminal_event = TerminalEvent::HitInfinity;
      orbit.event_step = static_cast<std::size_t>(k);
      break;
    }
  }
  return orbit;
}

}  // namespace mero
