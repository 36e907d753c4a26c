#include "mero/orbit.hpp"

#include <limits>
#include <ostream>

#include "mero/format.hpp"

namespace mero {

OrbitRecord OrbitRecord::from_points(std::span<const SpherePoint> values, double escape_radius,
                                     double pole_eps) {
  OrbitRecord orbit;
  orbit.escape_radius = escape_radius;
  orbit.pole_eps = pole_eps;
  if (values.empty()) throw DomainError("an orbit needs at least one point");
  if (values.front().is_infinite()) throw DomainError("orbit start must be finite");
  orbit.start = values.front().value();
  for (std::size_t k = 0; k < values.size(); ++k) {
    orbit.points.push_back(values[k]);
    if (values[k].is_infinite()) {
      orbit.annotations.emplace_back();
      orbit.terminal_event = TerminalEvent::HitInfinity;
      orbit.event_step = k;
      break;
    }
    orbit.annotations.emplace_back(values[k].modulus() > escape_radius ? "outer" : "");
  }
  return orbit;
}

OrbitRecord iterate(const MeromorphicMap& map, Complex z0, int max_steps, double pole_eps,
                    double escape_radius) {
  const std::vector<Complex> poles = pole_locations(map);
  return iterate_with([&map](Complex z) { return map(z); }, poles, z0, max_steps, pole_eps,
                      escape_radius);
}

std::vector<Complex> pole_locations(const MeromorphicMap& map) {
  std::vector<Complex> out;
  for (const Pole& p : map.poles()) out.push_back(p.location);
  return out;
}

std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Bounded:
      return "bounded";
    case OrbitClass::Escaping:
      return "escaping";
    case OrbitClass::BungeeSuspect:
      return "bungee-suspect";
    case OrbitClass::HitPole:
      return "hit-pole";
    case OrbitClass::Undecided:
      return "undecided";
  }
  return "undecided";
}

OrbitClass classify(const OrbitRecord& orbit, int window) {
  if (window < 1) throw DomainError("classification window must be positive");
  if (orbit.pole_hit) return OrbitClass::HitPole;

  const std::size_t n = orbit.points.size();
  const bool overflowed = orbit.terminal_event == TerminalEvent::HitInfinity;
  if (!overflowed && static_cast<std::size_t>(window) > n) {
    throw DomainError("classification window larger than orbit");
  }
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n);
  const double r = orbit.escape_radius;

  std::vector<double> tail;
  tail.reserve(w);
  for (std::size_t k = n - w; k < n; ++k) tail.push_back(orbit.points[k].modulus());

  const bool nondecreasing = std::is_sorted(tail.begin(), tail.end());
  const bool all_outside = std::all_of(tail.begin(), tail.end(), [r](double m) { return m > r; });
  if (nondecreasing && (overflowed || all_outside)) return OrbitClass::Escaping;

  if (!overflowed && std::all_of(orbit.points.begin(), orbit.points.end(),
                                 [r](const SpherePoint& p) { return p.modulus() < r; })) {
    return OrbitClass::Bounded;
  }

  const bool has_high = std::any_of(tail.begin(), tail.end(), [r](double m) { return m > r; });
  const bool has_low = std::any_of(tail.begin(), tail.end(), [r](double m) { return m < r / 4.0; });
  if (has_high && has_low) return OrbitClass::BungeeSuspect;
  return OrbitClass::Undecided;
}

PingPongVerdict detect_ping_pong(const OrbitRecord& orbit, std::span<const Complex> poles,
                                 const PingPongParams& params) {
  if (!(params.delta > 0.0)) throw DomainError("ping-pong delta must be positive");
  if (params.max_gap < 1) throw DomainError("ping-pong gap bound M must be at least 1");
  if (params.min_alternations < 2) throw DomainError("ping-pong K_min must be at least 2");
  double max_pole = 0.0;
  for (Complex p : poles) max_pole = std::max(max_pole, std::abs(p));
  if (!(params.escape_radius > params.delta + max_pole)) {
    throw DomainError("ping-pong escape radius must exceed delta plus the largest pole modulus");
  }

  PingPongVerdict best;
  best.gap_bound = params.max_gap;
  std::size_t best_start = std::numeric_limits<std::size_t>::max();

  const std::size_t n = orbit.points.size();
  if (n == 0) return best;
  const std::size_t last = n - 1;
  const std::size_t gap = static_cast<std::size_t>(params.max_gap);

  std::vector<char> far(n);
  for (std::size_t i = 0; i < n; ++i) far[i] = orbit.points[i].modulus() > params.escape_radius;

  for (Complex pole : poles) {
    std::vector<char> near(n);
    for (std::size_t i = 0; i < n; ++i) {
      near[i] = orbit.points[i].is_finite() && std::abs(orbit.points[i].value() - pole) < params.delta;
    }
    for (std::size_t start = 0; start < n && start < best_start; ++start) {
      if (!near[start]) continue;
      std::vector<std::size_t> m{start};
      std::vector<std::size_t> nn;
      std::size_t cur = start;
      bool want_far = true;
      for (;;) {
        const std::vector<char>& want = want_far ? far : near;
        std::size_t next = n;
        for (std::size_t j = cur + 1; j <= std::min(last, cur + gap); ++j) {
          if (want[j]) {
            next = j;
            break;
          }
        }
        if (next == n) break;
        (want_far ? nn : m).push_back(next);
        cur = next;
        want_far = !want_far;
      }
      const bool reaches_end = cur + gap >= last;
      if (reaches_end && nn.size() >= static_cast<std::size_t>(params.min_alternations)) {
        best.detected = true;
        best.pole = pole;
        best.m_indices = std::move(m);
        best.n_indices = std::move(nn);
        best_start = start;
        break;
      }
    }
  }
  return best;
}

void write_orbit_csv(std::ostream& os, const OrbitRecord& orbit) {
  os << "step,re,im,modulus,annotation\n";
  for (std::size_t k = 0; k < orbit.points.size(); ++k) {
    const SpherePoint& p = orbit.points[k];
    os << k << ',' << format_point(p) << ',' << format_double(p.modulus()) << ','
       << (k < orbit.annotations.size() ? orbit.annotations[k] : std::string()) << '\n';
  }
}

}  // namespace mero
