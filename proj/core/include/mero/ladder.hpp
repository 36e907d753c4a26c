#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mero/map.hpp"
#include "mero/orbit.hpp"

namespace mero {

enum class LadderMode { Outer, Itinerary };

/// One symbol of an essential itinerary.
enum class Bit { Zero, Infinity };

struct ItinerarySpec {
  std::vector<Bit> bits;
  int lag = 0;

  /// Throws DomainError when bits is empty or lag < 0.
  void validate() const;
};

/// Rotates the bit sequence left by k places (the shift applied k times on
/// a periodic itinerary). k may be negative.
ItinerarySpec shift(const ItinerarySpec& spec, int k);

/// Radii R_1, R_2, ... stored 0-based: radii[0] = R_1.
struct RadiusLadder {
  std::vector<double> radii;
  double c = 1.0;
  LadderMode mode = LadderMode::Outer;
  std::vector<Bit> itinerary;  ///< empty for outer ladders
};

/// R_1 = r1, R_{n+1} = c * M(R_n / 2, f), n radii in total. Requires every
/// declared pole inside |z| < r1/2 and c > 0 (DomainError). Throws
/// ConstructionError carrying the 0-based index of the first radius that
/// fails to exceed its predecessor or overflows.
RadiusLadder radius_ladder_outer(const MeromorphicMap& map, double r1, double c, int n,
                                 int n_samples = kDefaultCircleSamples);

struct FastEscapeResult {
  bool member = false;
  int lag = -1;                  ///< smallest admissible lag, -1 when none
  std::size_t tested_depth = 0;  ///< ladder entries actually compared
  bool hit_pole = false;         ///< the orbit met a declared pole
};

/// Smallest l in [0, max_lag] with |f^{n+l}(z)| >= radii[n] for every ladder
/// index n (0-based on both sides). Once the orbit overflows to infinity the
/// remaining comparisons hold trivially and are not counted in tested_depth.
/// An orbit meeting a pole gives member = false with hit_pole set.
FastEscapeResult is_fast_escaping(const MeromorphicMap& map, Complex z, const RadiusLadder& ladder,
                                  int max_lag);

/// R_1 = R for a leading infinity bit, 1/R for a leading zero; then
/// R_n = M(R_{n-1}, f) after an infinity bit and m(R_{n-1}, f) after a zero.
/// Throws ConstructionError (with index) if some radius is not a positive
/// finite number, or an infinity-bit radius is below R, or a zero-bit radius
/// exceeds 1/R.
RadiusLadder itinerary_ladder(const MeromorphicMap& map, const ItinerarySpec& spec, double r,
                              int n_samples = kDefaultCircleSamples);

/// Compares |points[n + lag]| with radii[n] (>= at infinity bits, <= at zero
/// bits) for every n with n + lag >= 0. Throws DomainError when the ladder
/// is not an itinerary ladder or the orbit is too short.
bool follows_itinerary(const OrbitRecord& orbit, const RadiusLadder& ladder, int lag);

/// Line-oriented text: mode, c, itinerary, then "R_n = value" per radius.
void write_ladder_report(std::ostream& os, const RadiusLadder& ladder);

}  // namespace mero
