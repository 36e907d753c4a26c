#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mero/expr.hpp"
#include "mero/sphere.hpp"

namespace mero {

struct Pole {
  Complex location;
  int order = 1;

  friend bool operator==(const Pole&, const Pole&) = default;
};

/// A meromorphic function given by an expression together with its
/// declared (finitely many) poles. Immutable; copies are cheap and safe to
/// share between threads.
class MeromorphicMap {
 public:
  /// Throws DomainError on duplicate pole locations or non-positive orders.
  MeromorphicMap(Expr expression, std::vector<Pole> poles, std::string label = {});

  const Expr& expression() const noexcept { return impl_->expression; }
  std::span<const Pole> poles() const noexcept { return impl_->poles; }
  const std::string& label() const noexcept { return impl_->label; }

  /// Infinity exactly at declared poles and whenever the computed value is
  /// non-finite or exceeds kOverflowGuard.
  SpherePoint operator()(Complex z) const;
  SpherePoint operator()(const SpherePoint& z) const;

  /// Raw derivative value f'(z) (IEEE semantics, no guard).
  Complex derivative_at(Complex z) const { return impl_->derivative_program(z); }

  /// Raw f(z) without pole or overflow handling.
  Complex raw(Complex z) const { return impl_->program(z); }

  bool is_pole(Complex z) const noexcept;
  /// Distance to the nearest declared pole, +inf when there are none.
  double pole_distance(Complex z) const noexcept;
  double max_pole_modulus() const noexcept;

 private:
  struct Impl {
    Expr expression;
    std::vector<Pole> poles;
    std::string label;
    Program program;
    Program derivative_program;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Parses `text` and attaches the declared poles.
MeromorphicMap parse_map(std::string_view text, std::vector<Pole> poles, std::string label = {});

SpherePoint eval(const MeromorphicMap& map, Complex z);

/// Symbolic derivative; the same pole locations with orders raised by one.
MeromorphicMap differentiate(const MeromorphicMap& map);

/// Expression-level composition outer(inner(z)). The singular points declared
/// for the result are the poles of `inner` (where the composite is undefined);
/// points mapped by `inner` onto a pole of `outer` are left to evaluation.
MeromorphicMap compose(const MeromorphicMap& outer, const MeromorphicMap& inner);

/// n-fold self-composition f∘...∘f (n >= 1).
MeromorphicMap iterate_map(const MeromorphicMap& map, int n);

/// |f'(z)| / (1 + |f(z)|^2). Throws DomainError when z is a declared pole.
double spherical_derivative(const MeromorphicMap& map, Complex z);

inline constexpr int kDefaultCircleSamples = 4096;

struct CircleModulus {
  double max = 0.0;  ///< M(r, f); +inf if some sample overflowed
  double min = 0.0;  ///< m(r, f)
};

/// Sampled max and min of |f| over `n_samples` points r·e^{2πij/n}, j = 0..n-1.
/// Throws DomainError if a declared pole lies on |z| = r or n_samples < 64.
CircleModulus circle_modulus(const MeromorphicMap& map, double r,
                             int n_samples = kDefaultCircleSamples);

}  // namespace mero
