#include "mero/ladder.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "mero/error.hpp"
#include "mero/format.hpp"

namespace mero {

void ItinerarySpec::validate() const {
  if (bits.empty()) throw DomainError("itinerary must have at least one bit");
  if (lag < 0) throw DomainError("itinerary lag must be nonnegative");
}

ItinerarySpec shift(const ItinerarySpec& spec, int k) {
  spec.validate();
  const auto n = static_cast<long>(spec.bits.size());
  long s = k % n;
  if (s < 0) s += n;
  ItinerarySpec out{{}, spec.lag};
  out.bits.reserve(spec.bits.size());
  for (long j = 0; j < n; ++j) out.bits.push_back(spec.bits[static_cast<std::size_t>((j + s) % n)]);
  return out;
}

RadiusLadder radius_ladder_outer(const MeromorphicMap& map, double r1, double c, int n,
                                 int n_samples) {
  if (n < 1) throw DomainError("ladder length must be at least 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("ladder constant c must be positive");
  if (!(r1 > 0.0) || !std::isfinite(r1)) throw DomainError("ladder start radius must be positive");
  for (const Pole& p : map.poles()) {
    if (!(std::abs(p.location) < r1 / 2.0)) {
      throw DomainError("declared poles must lie inside |z| < R1/2");
    }
  }
  RadiusLadder ladder;
  ladder.c = c;
  ladder.mode = LadderMode::Outer;
  ladder.radii.push_back(r1);
  for (int k = 1; k < n; ++k) {
    const double prev = ladder.radii.back();
    const double next = c * circle_modulus(map, prev / 2.0, n_samples).max;
    const auto index = static_cast<std::size_t>(k);
    if (!std::isfinite(next) || next > kOverflowGuard) {
      throw ConstructionError("ladder radius overflows at index " + std::to_string(k), index);
    }
    if (!(next > prev)) {
      throw ConstructionError("non-expanding ladder at index " + std::to_string(k) + ": c*M(R/2) = " +
                                  format_double(next) + " <= " + format_double(prev),
                              index);
    }
    ladder.radii.push_back(next);
  }
  return ladder;
}

FastEscapeResult is_fast_escaping(const MeromorphicMap& map, Complex z, const RadiusLadder& ladder,
                                  int max_lag) {
  if (ladder.mode != LadderMode::Outer) throw DomainError("fast-escape test needs an outer ladder");
  if (ladder.radii.empty()) throw DomainError("empty ladder");
  if (max_lag < 0) throw DomainError("max_lag must be nonnegative");

  const int steps = static_cast<int>(ladder.radii.size()) - 1 + max_lag;
  const double escape = std::max(kDefaultEscapeRadius, map.max_pole_modulus() + 2.0);
  const OrbitRecord orbit = iterate(map, z, std::max(steps, 1), kDefaultPoleEps, escape);

  FastEscapeResult result;
  if (orbit.pole_hit) {
    result.hit_pole = true;
    return result;
  }
  for (int l = 0; l <= max_lag; ++l) {
    bool ok = true;
    std::size_t depth = 0;
    for (std::size_t n = 0; n < ladder.radii.size(); ++n) {
      const std::size_t idx = n + static_cast<std::size_t>(l);
      if (idx >= orbit.points.size() || orbit.points[idx].is_infinite()) break;
      ++depth;
      if (orbit.points[idx].modulus() < ladder.radii[n]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      result.member = true;
      result.lag = l;
      result.tested_depth = depth;
      return result;
    }
  }
  return result;
}

RadiusLadder itinerary_ladder(const MeromorphicMap& map, const ItinerarySpec& spec, double r,
                              int n_samples) {
  spec.validate();
  if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("itinerary radius R must exceed 1");
  RadiusLadder ladder;
  ladder.mode = LadderMode::Itinerary;
  ladder.itinerary = spec.bits;
  ladder.radii.push_back(spec.bits.front() == Bit::Infinity ? r : 1.0 / r);
  for (std::size_t n = 1; n < spec.bits.size(); ++n) {
    const CircleModulus cm = circle_modulus(map, ladder.radii.back(), n_samples);
    ladder.radii.push_back(spec.bits[n] == Bit::Infinity ? cm.max : cm.min);
  }
  for (std::size_t n = 0; n < ladder.radii.size(); ++n) {
    const double v = ladder.radii[n];
    if (!(v > 0.0) || !std::isfinite(v) || v > kOverflowGuard) {
      throw ConstructionError("itinerary radius R_" + std::to_string(n + 1) + " is not a positive finite number", n);
    }
    const bool ok = spec.bits[n] == Bit::Infinity ? v >= r : v <= 1.0 / r;
    if (!ok) {
      throw ConstructionError("itinerary radius R_" + std::to_string(n + 1) + " = " + format_double(v) +
                                  " does not reach the required side of {0, infinity}",
                              n);
    }
  }
  return ladder;
}

bool follows_itinerary(const OrbitRecord& orbit, const RadiusLadder& ladder, int lag) {
  if (ladder.mode != LadderMode::Itinerary || ladder.itinerary.size() != ladder.radii.size()) {
    throw DomainError("follows_itinerary needs an itinerary ladder");
  }
  bool ok = true;
  for (std::size_t n = 0; n < ladder.radii.size(); ++n) {
    const long idx = static_cast<long>(n) + lag;
    if (idx < 0) continue;
    if (static_cast<std::size_t>(idx) >= orbit.points.size()) {
      throw DomainError("orbit too short for the ladder at lag " + std::to_string(lag));
    }
    const double m = orbit.points[static_cast<std::size_t>(idx)].modulus();
    if (ladder.itinerary[n] == Bit::Infinity ? !(m >= ladder.radii[n]) : !(m <= ladder.radii[n])) ok = false;
  }
  return ok;
}

void write_ladder_report(std::ostream& os, const RadiusLadder& ladder) {
  os << "mode = " << (ladder.mode == LadderMode::Outer ? "outer" : "itinerary") << '\n';
  os << "c = " << format_double(ladder.c) << '\n';
  if (!ladder.itinerary.empty()) {
    os << "itinerary =";
    for (Bit b : ladder.itinerary) os << (b == Bit::Infinity ? " inf" : " 0");
    os << '\n';
  }
  for (std::size_t n = 0; n < ladder.radii.size(); ++n) {
    os << "R_" << n + 1 << " = " << format_double(ladder.radii[n]) << '\n';
  }
}

}  // namespace mero
