#pragma once

// Shared helpers for the test binaries: a deterministic generator and
// closed-form reference implementations written without the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

namespace testkit {

using C = std::complex<double>;

/// SplitMix64; fixed seeds keep every property run reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  C point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }

 private:
  std::uint64_t state_;
};

/// e^z from e^x (cos y + i sin y).
inline C exp_oracle(C z) {
  const double r = std::exp(z.real());
  return {r * std::cos(z.imag()), r * std::sin(z.imag())};
}

/// 1/z = conj(z) / |z|^2.
inline C recip_oracle(C z) {
  const double n = z.real() * z.real() + z.imag() * z.imag();
  return {z.real() / n, -z.imag() / n};
}

inline C mul(C a, C b) { return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()}; }

/// Chordal distance via stereographic projection onto the sphere of
/// diameter 2 and the Euclidean distance in R^3. A null pointer is infinity.
inline double chordal_oracle(const C* a, const C* b) {
  auto lift = [](const C* p, double out[3]) {
    if (p == nullptr) {
      out[0] = 0.0;
      out[1] = 0.0;
      out[2] = 1.0;
      return;
    }
    const double n = std::norm(*p);
    out[0] = 2.0 * p->real() / (1.0 + n);
    out[1] = 2.0 * p->imag() / (1.0 + n);
    out[2] = (n - 1.0) / (n + 1.0);
  };
  double u[3], v[3];
  lift(a, u);
  lift(b, v);
  return std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) + (u[2] - v[2]) * (u[2] - v[2]));
}

inline double rel_err(C got, C want) {
  const double scale = std::max(std::abs(want), std::numeric_limits<double>::min());
  return std::abs(got - want) / scale;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

/// n x n lattice of cell centers over [lo, hi]^2, row-major.
inline std::vector<C> lattice(double lo, double hi, int n) {
  std::vector<C> out;
  const double h = (hi - lo) / n;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out.emplace_back(lo + (i + 0.5) * h, lo + (j + 0.5) * h);
  }
  return out;
}

/// Orbit-like sequence mixing points within `delta` of `pole`, points
/// beyond `r_esc` and points in between, with an embedded alternating
/// near/far stretch of random length.
inline std::vector<C> ping_pong_sequence(Rng& rng, C pole, double delta, double r_esc) {
  std::vector<C> zs;
  const int length = rng.integer(20, 60);
  const int start = rng.integer(0, length / 2);
  const int alternating = rng.integer(0, 12);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < length; ++i) {
    int kind = rng.integer(0, 2);
    if (i >= start && i < start + alternating) kind = (i - start) % 2 == 0 ? 0 : 1;
    if (kind == 0) {
      zs.push_back(pole + std::polar(delta * rng.uniform(0.01, 0.99), rng.uniform(0.0, two_pi)));
    } else if (kind == 1) {
      zs.push_back(std::polar(r_esc * rng.uniform(1.01, 50.0), rng.uniform(0.0, two_pi)));
    } else {
      zs.push_back(std::polar(rng.uniform(std::abs(pole) + delta * 1.01, r_esc * 0.99), rng.uniform(0.0, two_pi)));
    }
  }
  return zs;
}

}  // namespace testkit
