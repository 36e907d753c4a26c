#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mero/construct.hpp"
#include "mero/error.hpp"
#include "mero/format.hpp"

namespace mero {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr std::size_t kChunk = 512;

struct Sample {
  Complex z;
  Complex target;
  double weight;
};

// Plain a*b without the NaN recovery of std::complex, so that loops
// vectorize; every point sees the same operation sequence regardless of how
// many points are evaluated together.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

std::vector<Complex> fit_points(const DiskRegion& d, int density) {
  std::vector<Complex> pts = disk_samples(d, density);
  const std::vector<Complex> ring = disk_boundary(d, 4 * density);
  pts.insert(pts.end(), ring.begin(), ring.end());
  return pts;
}

bool less_point(Complex a, Complex b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> EntireApprox::evaluate(std::span<const Complex> zs) const {
  std::vector<Complex> out(zs.size());
  if (coefficients.empty()) return out;
  const auto d = static_cast<std::size_t>(degree);
  const auto stride = static_cast<std::size_t>(degree + 1);
  std::vector<Complex> s(kChunk), w(kChunk * stride);
  for (std::size_t begin = 0; begin < zs.size(); begin += kChunk) {
    const std::size_t count = std::min<std::size_t>(kChunk, zs.size() - begin);
    for (std::size_t i = 0; i < count; ++i) {
      s[i] = (zs[begin + i] - center) / scale;
      w[i] = 1.0;
    }
    // w[k * kChunk + i] holds basis function k at point i.
    for (std::size_t k = 0; k < d; ++k) {
      Complex* next = &w[(k + 1) * kChunk];
      const Complex* cur = &w[k * kChunk];
      for (std::size_t i = 0; i < count; ++i) next[i] = cmul(s[i], cur[i]);
      if (basis == FitBasis::ScaledMonomial) continue;
      const Complex* h = &hessenberg[k * stride];
      for (std::size_t j = 0; j <= k; ++j) {
        const Complex* col = &w[j * kChunk];
        for (std::size_t i = 0; i < count; ++i) next[i] -= cmul(col[i], h[j]);
      }
      // Subdiagonal entries are column norms, hence real.
      const double pivot = h[k + 1].real();
      for (std::size_t i = 0; i < count; ++i) next[i] /= pivot;
    }
    for (std::size_t i = 0; i < count; ++i) out[begin + i] = 0.0;
    for (std::size_t k = 0; k <= d; ++k) {
      const Complex* col = &w[k * kChunk];
      for (std::size_t i = 0; i < count; ++i) out[begin + i] += cmul(col[i], coefficients[k]);
    }
  }
  return out;
}

Complex EntireApprox::operator()(Complex z) const { return evaluate(std::span<const Complex>(&z, 1)).front(); }

EntireApprox fit_entire(const DiskConfig& config, int degree, const FitOptions& options) {
  if (degree < 0) throw DomainError("fit degree must be nonnegative");
  if (options.samples_per_region < 2 || options.validation_density < 2) {
    throw DomainError("sampling densities must be at least 2");
  }

  std::vector<NamedRegion> constrained;
  for (const NamedRegion& r : config.regions()) {
    if (region_bound(config, r)) constrained.push_back(r);
  }

  std::vector<Sample> samples;
  std::vector<std::vector<Complex>> fit_sets;
  for (const NamedRegion& r : constrained) {
    const double weight = 1.0 / *region_bound(config, r);
    std::vector<Complex> pts = fit_points(r.disk, options.samples_per_region);
    for (Complex z : pts) samples.push_back({z, region_target(config, r, z), weight});
    std::sort(pts.begin(), pts.end(), less_point);
    fit_sets.push_back(std::move(pts));
  }
  const auto m = static_cast<Eigen::Index>(samples.size());
  if (m < degree + 1) throw DomainError("fewer fit samples than basis functions");

  EntireApprox approx;
  approx.degree = degree;
  approx.basis = options.basis;

  double re_min = std::numeric_limits<double>::infinity(), re_max = -re_min;
  double im_min = re_min, im_max = -re_min;
  for (const Sample& s : samples) {
    re_min = std::min(re_min, s.z.real());
    re_max = std::max(re_max, s.z.real());
    im_min = std::min(im_min, s.z.imag());
    im_max = std::max(im_max, s.z.imag());
  }
  if (options.basis == FitBasis::Arnoldi) {
    approx.center = Complex((re_min + re_max) / 2.0, (im_min + im_max) / 2.0);
    approx.scale = std::max(re_max - re_min, im_max - im_min) / 2.0;
  } else {
    approx.center = 0.0;
    approx.scale = config.k.back();
  }

  Vector s(m);
  for (Eigen::Index i = 0; i < m; ++i) s(i) = (samples[static_cast<std::size_t>(i)].z - approx.center) / approx.scale;

  Matrix q(m, degree + 1);
  q.col(0).setOnes();
  if (options.basis == FitBasis::Arnoldi) {
    Matrix h = Matrix::Zero(degree + 1, degree);
    const double root_m = std::sqrt(static_cast<double>(m));
    for (int k = 0; k < degree; ++k) {
      Vector v = s.cwiseProduct(q.col(k));
      const double before = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        const Vector coeff = q.leftCols(k + 1).adjoint() * v / static_cast<double>(m);
        v.noalias() -= q.leftCols(k + 1) * coeff;
        h.col(k).head(k + 1) += coeff;
      }
      const double norm = v.norm();
      if (!(norm > 1e-13 * before)) {
        throw ConstructionError("rank-deficient fit basis at degree " + std::to_string(k + 1) +
                                    " (condition estimate " + format_double(before / norm) + ")",
                                static_cast<std::size_t>(k + 1));
      }
      h(k + 1, k) = norm / root_m;
      q.col(k + 1) = v / h(k + 1, k);
    }
    approx.hessenberg.assign(h.data(), h.data() + h.size());
  } else {
    for (int k = 0; k < degree; ++k) q.col(k + 1) = s.cwiseProduct(q.col(k));
  }

  Vector b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Sample& sample = samples[static_cast<std::size_t>(i)];
    q.row(i) *= sample.weight;
    b(i) = sample.target * sample.weight;
  }
  const Eigen::ColPivHouseholderQR<Matrix> qr(q);
  const Eigen::Index rank = qr.rank();
  const auto diag = qr.matrixQR().diagonal().cwiseAbs();
  const double smallest = diag(std::max<Eigen::Index>(rank - 1, 0));
  approx.condition_estimate = smallest > 0.0 ? diag(0) / smallest : std::numeric_limits<double>::infinity();
  if (rank < degree + 1) {
    const double full = diag(degree) > 0.0 ? diag(0) / diag(degree) : std::numeric_limits<double>::infinity();
    throw ConstructionError("rank-deficient least-squares system at degree " + std::to_string(degree) +
                                ": rank " + std::to_string(rank) + " (condition estimate " + format_double(full) + ")",
                            static_cast<std::size_t>(degree));
  }
  const Vector c = qr.solve(b);
  approx.objective = (q * c - b).norm();
  approx.coefficients.assign(c.data(), c.data() + c.size());

  for (std::size_t r = 0; r < constrained.size(); ++r) {
    std::vector<Complex> validation;
    for (Complex z : disk_samples(constrained[r].disk, options.validation_density)) {
      if (!std::binary_search(fit_sets[r].begin(), fit_sets[r].end(), z, less_point)) validation.push_back(z);
    }
    const std::vector<Complex> g = approx.evaluate(validation);
    RegionResidual rr;
    rr.name = constrained[r].name;
    rr.bound = *region_bound(config, constrained[r]);
    rr.samples = validation.size();
    for (std::size_t i = 0; i < validation.size(); ++i) {
      rr.max_residual = std::max(rr.max_residual, std::abs(g[i] - region_target(config, constrained[r], validation[i])));
    }
    approx.fit_report.push_back(rr);
  }
  return approx;
}

}  // namespace mero
