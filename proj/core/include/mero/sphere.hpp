#pragma once

#include <complex>
#include <iosfwd>

namespace mero {

using Complex = std::complex<double>;

/// Finite values with modulus above this are treated as the point at infinity.
inline constexpr double kOverflowGuard = 1e150;

/// A point of the Riemann sphere: either a finite complex number or infinity.
class SpherePoint {
 public:
  /// The finite point 0.
  constexpr SpherePoint() = default;

  static SpherePoint infinity() noexcept {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  /// Wraps `z` as is. Non-finite components still map to infinity.
  static SpherePoint finite(Complex z) noexcept;

  /// Like `finite`, but any value with |z| > kOverflowGuard becomes infinity.
  static SpherePoint guarded(Complex z) noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// The finite value. Throws DomainError for infinity.
  Complex value() const;

  /// |z|, or +inf for the point at infinity.
  double modulus() const noexcept;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{};
  bool infinite_ = false;
};

/// Chordal distance on the sphere of diameter 2; always in [0, 2].
double chordal(const SpherePoint& a, const SpherePoint& b) noexcept;
double chordal(Complex a, Complex b) noexcept;

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

}  // namespace mero
