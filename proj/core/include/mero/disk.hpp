#pragma once

#include <vector>

#include "mero/sphere.hpp"

namespace mero {

/// B(center, radius), open unless `closed`.
struct DiskRegion {
  Complex center;
  double radius = 1.0;
  bool closed = false;

  /// Throws DomainError unless radius is positive and finite.
  DiskRegion(Complex center, double radius, bool closed = false);

  /// |z - center| < radius, or <= when closed.
  bool contains(Complex z) const noexcept;

  /// radius - |z - center|: positive inside, negative outside.
  double margin(Complex z) const noexcept { return radius - std::abs(z - center); }

  friend bool operator==(const DiskRegion&, const DiskRegion&) = default;
};

/// Image of `d` under z -> 1/z. Throws DomainError when 0 lies in the
/// closure of `d`.
DiskRegion disk_inversion(const DiskRegion& d);

/// True when the closures of `a` and `b` are disjoint.
bool closures_disjoint(const DiskRegion& a, const DiskRegion& b) noexcept;

/// Axis-aligned window [re_min, re_max] x [im_min, im_max].
struct Rect {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;

  /// Throws DomainError unless re_min < re_max and im_min < im_max.
  void validate() const;
  bool contains(Complex z) const noexcept {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Row-major cell centers of an nx-by-ny lattice over `r`; row 0 is the top
/// row (largest imaginary part).
std::vector<Complex> cell_centers(const Rect& r, int nx, int ny);

/// Deterministic samples of the closed disk: the centers of a
/// density-by-density lattice over the bounding square that fall inside the
/// disk, followed by `density` boundary points at angles π(2j+1)/density.
/// For a disk centered on the real axis the set is closed under conjugation.
std::vector<Complex> disk_samples(const DiskRegion& d, int density);

/// `count` boundary points of `d` at angles π(2j+1)/count, emitted as
/// conjugate pairs about the center, plus center - radius when count is odd.
std::vector<Complex> disk_boundary(const DiskRegion& d, int count);

}  // namespace mero
