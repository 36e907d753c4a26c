#include "mero/map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mero/error.hpp"

namespace mero {

MeromorphicMap::MeromorphicMap(Expr expression, std::vector<Pole> poles, std::string label) {
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (poles[i].order < 1) throw DomainError("pole order must be a positive integer");
    if (!std::isfinite(poles[i].location.real()) || !std::isfinite(poles[i].location.imag())) {
      throw DomainError("pole location must be finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (poles[j].location == poles[i].location) {
        throw DomainError("duplicate pole at index " + std::to_string(i));
      }
    }
  }
  Program program(expression);
  Program derivative(expression.derivative());
  impl_ = std::make_shared<const Impl>(Impl{std::move(expression), std::move(poles), std::move(label),
                                            std::move(program), std::move(derivative)});
}

SpherePoint MeromorphicMap::operator()(Complex z) const {
  if (is_pole(z)) return SpherePoint::infinity();
  return SpherePoint::guarded(impl_->program(z));
}

SpherePoint MeromorphicMap::operator()(const SpherePoint& z) const {
  if (z.is_infinite()) return SpherePoint::infinity();
  return (*this)(z.value());
}

bool MeromorphicMap::is_pole(Complex z) const noexcept {
  return std::any_of(impl_->poles.begin(), impl_->poles.end(),
                     [z](const Pole& p) { return p.location == z; });
}

double MeromorphicMap::pole_distance(Complex z) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const Pole& p : impl_->poles) best = std::min(best, std::abs(z - p.location));
  return best;
}

double MeromorphicMap::max_pole_modulus() const noexcept {
  double best = 0.0;
  for (const Pole& p : impl_->poles) best = std::max(best, std::abs(p.location));
  return best;
}

MeromorphicMap parse_map(std::string_view text, std::vector<Pole> poles, std::string label) {
  return MeromorphicMap(parse_expression(text), std::move(poles),
                        label.empty() ? std::string(text) : std::move(label));
}

SpherePoint eval(const MeromorphicMap& map, Complex z) { return map(z); }

MeromorphicMap differentiate(const MeromorphicMap& map) {
  std::vector<Pole> poles(map.poles().begin(), map.poles().end());
  for (Pole& p : poles) ++p.order;
  return MeromorphicMap(map.expression().derivative(), std::move(poles), "d/dz " + map.label());
}

MeromorphicMap compose(const MeromorphicMap& outer, const MeromorphicMap& inner) {
  std::vector<Pole> poles(inner.poles().begin(), inner.poles().end());
  return MeromorphicMap(outer.expression().substitute(inner.expression()), std::move(poles),
                        "(" + outer.label() + ")o(" + inner.label() + ")");
}

MeromorphicMap iterate_map(const MeromorphicMap& map, int n) {
  if (n < 1) throw DomainError("iterate_map needs n >= 1");
  MeromorphicMap result = map;
  for (int i = 1; i < n; ++i) result = compose(map, result);
  return result;
}

double spherical_derivative(const MeromorphicMap& map, Complex z) {
  if (map.is_pole(z)) throw DomainError("spherical derivative requested at a declared pole");
  const double value = std::abs(map.raw(z));
  const double slope = std::abs(map.derivative_at(z));
  if (!std::isfinite(value)) return 0.0;
  if (value > 1e150) return slope / value / value;
  return slope / (1.0 + value * value);
}

CircleModulus circle_modulus(const MeromorphicMap& map, double r, int n_samples) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("circle radius must be positive");
  if (n_samples < 64) throw DomainError("circle_modulus needs at least 64 samples");
  for (const Pole& p : map.poles()) {
    if (std::abs(std::abs(p.location) - r) <= 1e-12 * std::max(1.0, r)) {
      throw DomainError("declared pole lies on the sampling circle |z| = " + std::to_string(r));
    }
  }
  CircleModulus out{0.0, std::numeric_limits<double>::infinity()};
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < n_samples; ++j) {
    const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n_samples);
    const double m = map(std::polar(r, theta)).modulus();
    out.max = std::max(out.max, m);
    out.min = std::min(out.min, m);
  }
  return out;
}

}  // namespace mero
