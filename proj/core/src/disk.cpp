#include "mero/disk.hpp"

#include <cmath>
#include <numbers>

#include "mero/error.hpp"

namespace mero {

DiskRegion::DiskRegion(Complex c, double r, bool is_closed) : center(c), radius(r), closed(is_closed) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("disk radius must be positive and finite");
}

bool DiskRegion::contains(Complex z) const noexcept {
  const double d = std::abs(z - center);
  return closed ? d <= radius : d < radius;
}

DiskRegion disk_inversion(const DiskRegion& d) {
  const double c2 = std::norm(d.center);
  const double denom = c2 - d.radius * d.radius;
  if (!(std::sqrt(c2) > d.radius)) throw DomainError("cannot invert a disk whose closure contains 0");
  return DiskRegion(std::conj(d.center) / denom, d.radius / denom, d.closed);
}

bool closures_disjoint(const DiskRegion& a, const DiskRegion& b) noexcept {
  return std::abs(a.center - b.center) > a.radius + b.radius;
}

void Rect::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) throw DomainError("window must satisfy min < max on both axes");
}

std::vector<Complex> cell_centers(const Rect& r, int nx, int ny) {
  r.validate();
  if (nx < 1 || ny < 1) throw DomainError("lattice dimensions must be positive");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  const double dx = (r.re_max - r.re_min) / nx;
  const double dy = (r.im_max - r.im_min) / ny;
  for (int j = 0; j < ny; ++j) {
    const double y = r.im_max - (j + 0.5) * dy;
    for (int i = 0; i < nx; ++i) out.emplace_back(r.re_min + (i + 0.5) * dx, y);
  }
  return out;
}

namespace {

// Symmetric offsets (2j+1)/n - 1 in [-1, 1], exactly mirrored about 0.
std::vector<double> symmetric_offsets(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int j = 0; j < n / 2; ++j) {
    const double v = -1.0 + (2.0 * j + 1.0) / n;
    t[static_cast<std::size_t>(j)] = v;
    t[static_cast<std::size_t>(n - 1 - j)] = -v;
  }
  if (n % 2 == 1) t[static_cast<std::size_t>(n / 2)] = 0.0;
  return t;
}

}  // namespace

std::vector<Complex> disk_samples(const DiskRegion& d, int density) {
  if (density < 2) throw DomainError("disk sampling density must be at least 2");
  const std::vector<double> t = symmetric_offsets(density);
  std::vector<Complex> out;
  for (double y : t) {
    for (double x : t) {
      if (x * x + y * y <= 1.0) out.push_back(d.center + Complex(d.radius * x, d.radius * y));
    }
  }
  const std::vector<Complex> ring = disk_boundary(d, density);
  out.insert(out.end(), ring.begin(), ring.end());
  return out;
}

std::vector<Complex> disk_boundary(const DiskRegion& d, int count) {
  if (count < 1) throw DomainError("boundary sample count must be positive");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count / 2; ++j) {
    const double theta = std::numbers::pi * (2.0 * j + 1.0) / count;
    const Complex u = std::polar(d.radius, theta);
    out.push_back(d.center + u);
    out.push_back(d.center + std::conj(u));
  }
  if (count % 2 == 1) out.push_back(d.center - d.radius);
  return out;
}

}  // namespace mero
