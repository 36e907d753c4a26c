#include "mero/julia.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>

#include "mero/error.hpp"
#include "mero/format.hpp"
#include "mero/parallel.hpp"

namespace mero {

namespace {

bool less_point(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

bool near_any(const std::vector<Complex>& pts, Complex z) {
  return std::any_of(pts.begin(), pts.end(),
                     [z](Complex p) { return std::abs(p - z) <= kMergeTolerance; });
}

}  // namespace

PointCloud preimages(const MeromorphicMap& map, const SpherePoint& w, const Rect& region,
                     int seed_density, int workers, const NewtonOptions& options) {
  region.validate();
  if (seed_density < 1) throw DomainError("seed density must be positive");
  PointCloud cloud;
  cloud.generation = 1;

  std::vector<Complex> found;
  if (w.is_infinite()) {
    for (const Pole& p : map.poles()) {
      if (region.contains(p.location)) found.push_back(p.location);
    }
  } else {
    const std::vector<Complex> seeds = cell_centers(region, seed_density, seed_density);
    std::vector<std::optional<Complex>> roots(seeds.size());
    const Complex target = w.value();
    parallel_for(seeds.size(), workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) roots[i] = newton_root(map, target, seeds[i], options);
    });
    for (const auto& root : roots) {
      if (root && region.contains(*root) && !near_any(found, *root)) found.push_back(*root);
    }
  }
  std::sort(found.begin(), found.end(), less_point);
  cloud.points = std::move(found);
  cloud.generations.assign(cloud.points.size(), 1);
  return cloud;
}

PointCloud pole_backward_orbit(const MeromorphicMap& map, int depth, const Rect& region,
                               int seed_density, int workers) {
  if (depth < 1) throw DomainError("backward orbit depth must be at least 1");
  PointCloud cloud = preimages(map, SpherePoint::infinity(), region, seed_density, workers);
  cloud.generation = depth;
  std::vector<Complex> previous = cloud.points;
  for (int g = 2; g <= depth && !previous.empty(); ++g) {
    std::vector<Complex> fresh;
    for (Complex target : previous) {
      const PointCloud pre = preimages(map, SpherePoint::finite(target), region, seed_density, workers);
      for (Complex z : pre.points) {
        if (!near_any(cloud.points, z) && !near_any(fresh, z)) fresh.push_back(z);
      }
    }
    std::sort(fresh.begin(), fresh.end(), less_point);
    for (Complex z : fresh) {
      cloud.points.push_back(z);
      cloud.generations.push_back(g);
    }
    previous = std::move(fresh);
  }
  return cloud;
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
  os << "re,im,generation\n";
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    os << format_double(cloud.points[i].real()) << ',' << format_double(cloud.points[i].imag()) << ','
       << cloud.generations[i] << '\n';
  }
}

namespace {

struct Candidate {
  double distance;
  std::size_t index;
};

// f^n and (f^n)' at zeta by the chain rule; nullopt if the orbit meets a pole
// or leaves the finite plane.
std::optional<std::pair<Complex, Complex>> iterate_with_derivative(const MeromorphicMap& map,
                                                                   Complex zeta, int n) {
  Complex v = zeta;
  Complex d = 1.0;
  for (int k = 0; k < n; ++k) {
    if (map.is_pole(v)) return std::nullopt;
    d *= map.derivative_at(v);
    v = map.raw(v);
    if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d)) || std::abs(v) > kOverflowGuard) {
      return std::nullopt;
    }
  }
  return std::make_pair(v, d);
}

bool refine_hit(const MeromorphicMap& map, Complex center, double r, Complex seed, Complex w, int n,
                const BlowupParams& params) {
  Complex zeta = seed;
  const SpherePoint target = SpherePoint::finite(w);
  for (int step = 0; step <= params.refine_steps; ++step) {
    const auto value = iterate_with_derivative(map, zeta, n);
    if (!value) return false;
    const auto [v, d] = *value;
    if (chordal(SpherePoint::finite(v), target) < params.tolerance) return std::abs(zeta - center) <= r;
    if (d == Complex{}) return false;
    zeta -= (v - w) / d;
    if (!std::isfinite(std::abs(zeta))) return false;
  }
  return false;
}

}  // namespace

std::vector<double> probe_blowup(const MeromorphicMap& map, Complex z, double r,
                                 const std::vector<Complex>& targets, int iterations,
                                 const BlowupParams& params) {
  if (!(r > 0.0)) throw DomainError("probe radius must be positive");
  if (iterations < 0) throw DomainError("iteration count must be nonnegative");
  if (params.disk_samples < 1) throw DomainError("probe needs at least one disk sample");
  std::vector<double> coverage;
  if (iterations == 0 || targets.empty()) {
    coverage.assign(static_cast<std::size_t>(iterations), 0.0);
    return coverage;
  }

  const auto s = static_cast<std::size_t>(params.disk_samples);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> seeds(s);
  std::vector<SpherePoint> images(s);
  for (std::size_t j = 0; j < s; ++j) {
    const double rho = r * std::sqrt((static_cast<double>(j) + 0.5) / static_cast<double>(s));
    seeds[j] = z + std::polar(rho, golden * static_cast<double>(j));
    images[j] = SpherePoint::finite(seeds[j]);
  }

  const auto keep = static_cast<std::size_t>(std::max(params.refine_candidates, 0));
  std::vector<char> hit(targets.size());
  for (int n = 1; n <= iterations; ++n) {
    for (SpherePoint& p : images) p = p.is_finite() ? map(p.value()) : SpherePoint::infinity();
    parallel_for(targets.size(), params.workers, [&](std::size_t begin, std::size_t end) {
      std::vector<Candidate> best;
      for (std::size_t t = begin; t < end; ++t) {
        const SpherePoint w = SpherePoint::finite(targets[t]);
        best.clear();
        for (std::size_t j = 0; j < s; ++j) {
          const double dist = chordal(images[j], w);
          if (dist >= params.refine_radius && dist >= params.tolerance) continue;
          if (best.size() < std::max<std::size_t>(keep, 1) || dist < best.back().distance) {
            const Candidate c{dist, j};
            auto pos = std::upper_bound(best.begin(), best.end(), c, [](const Candidate& a, const Candidate& b) {
              return a.distance < b.distance;
            });
            best.insert(pos, c);
            if (best.size() > std::max<std::size_t>(keep, 1)) best.pop_back();
          }
        }
        bool covered = !best.empty() && best.front().distance < params.tolerance;
        for (std::size_t c = 0; !covered && c < std::min(keep, best.size()); ++c) {
          covered = refine_hit(map, z, r, seeds[best[c].index], targets[t], n, params);
        }
        hit[t] = covered;
      }
    });
    const auto count = static_cast<double>(std::count(hit.begin(), hit.end(), 1));
    coverage.push_back(count / static_cast<double>(targets.size()));
  }
  return coverage;
}

}  // namespace mero
