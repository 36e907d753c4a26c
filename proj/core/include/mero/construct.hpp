#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mero/disk.hpp"
#include "mero/map.hpp"
#include "mero/newton.hpp"
#include "mero/orbit.hpp"

namespace mero {

enum class RegionKind { A, B, BPlus, BMinus, UnitDisk };

struct NamedRegion {
  std::string name;  ///< "A_1", "B_2", "B_+", "B_-", "D"
  RegionKind kind;
  int index;  ///< m for A_m and B_m, 0 otherwise
  DiskRegion disk;
};

/// The truncated disk family A_m = B(k_m, R), B_m = B((k_m + k_{m+1})/2, R/4),
/// B_+ = closed B(2, 1/4), B_- = closed B(-5, 1), D = closed unit disk.
/// Vectors are 0-based: A[0] is A_1, eps[0] is ε_1.
struct DiskConfig {
  double R = 0.0;
  std::vector<double> k;
  std::vector<DiskRegion> A;
  std::vector<DiskRegion> B;  ///< B_1 .. B_{Mmax-1}
  DiskRegion B_plus{{2.0, 0.0}, 0.25, true};
  DiskRegion B_minus{{-5.0, 0.0}, 1.0, true};
  DiskRegion unit_disk{{0.0, 0.0}, 1.0, true};
  std::vector<double> eps;  ///< ε_1 .. ε_{Mmax-1}

  std::size_t depth() const noexcept { return k.size(); }
  /// A_1..A_M, B_1..B_{M-1}, B_+, B_-, D in that order.
  std::vector<NamedRegion> regions() const;
};

/// Validates k_m > 5/2, k_{m+1} > k_m + 3R (ConstructionError carrying the
/// 1-based m), then pairwise disjointness of all region closures
/// (ConstructionError naming both regions), and fills in ε_m. Needs at least
/// two values of k.
DiskConfig build_configuration(double R, std::vector<double> k);

/// ε_m = min(g1, g2) / 2 with g1 = 1/k_{m+1} - 1/(k_{m+1} + R), the margin of
/// B(1/k_{m+1}, ·) inside 1/A_{m+1}, and g2 = 1/k_{m+1} - 1/(k_{m+1} + R/4),
/// the largest radius whose inversion stays inside B(k_{m+1}, R/4).
std::vector<double> derive_epsilons(const DiskConfig& config);
std::vector<double> derive_epsilons(double R, std::span<const double> k);

/// Checks B(1/k_{m+1}, ε_m) ⊂ 1/A_{m+1} and 1/B(1/k_{m+1}, ε_m) ⊂ B(k_{m+1}, R/4)
/// through disk_inversion, allowing `tol` of slack.
bool epsilon_containments_hold(double R, std::span<const double> k, std::span<const double> eps,
                               double tol = 1e-12);

/// Target for g at z, or nullopt outside every constrained region. A_Mmax
/// carries no target in the truncated family.
std::optional<Complex> target_value(const DiskConfig& config, Complex z);

/// Bound on |g - target| for a region, nullopt for A_Mmax.
std::optional<double> region_bound(const DiskConfig& config, const NamedRegion& region);
/// Target function of a region (A_Mmax excluded).
Complex region_target(const DiskConfig& config, const NamedRegion& region, Complex z);

enum class FitBasis { Arnoldi, ScaledMonomial };

struct RegionResidual {
  std::string name;
  double max_residual = 0.0;
  double bound = 0.0;
  std::size_t samples = 0;
};

/// A polynomial g stored in a basis adapted to the fit samples. With the
/// Arnoldi basis, q_0 = 1 and
///   H(k+1,k) q_{k+1}(s) = s q_k(s) - sum_{j<=k} H(j,k) q_j(s),
/// s = (z - center) / scale. With the monomial basis q_k(s) = s^k and
/// s = z / scale.
struct EntireApprox {
  int degree = 0;
  FitBasis basis = FitBasis::Arnoldi;
  Complex center;
  double scale = 1.0;                ///< basis_scale
  std::vector<Complex> coefficients;  ///< degree + 1 basis coefficients
  std::vector<Complex> hessenberg;    ///< (degree+1) x degree, column-major; Arnoldi only
  double objective = 0.0;             ///< weighted residual 2-norm on the fit set
  double condition_estimate = 1.0;
  std::vector<RegionResidual> fit_report;  ///< validation residual per constrained region

  Complex operator()(Complex z) const;
  std::vector<Complex> evaluate(std::span<const Complex> zs) const;
};

struct FitOptions {
  int samples_per_region = 40;  ///< interior lattice density; 4x as many boundary points
  int validation_density = 64;
  FitBasis basis = FitBasis::Arnoldi;
};

/// Weighted least squares (weight 1/bound per region) of g against the
/// region targets over all constrained regions. Throws ConstructionError when
/// the basis matrix is numerically rank deficient; the message carries a
/// condition estimate.
EntireApprox fit_entire(const DiskConfig& config, int degree, const FitOptions& options = {});

struct InequalityRow {
  std::string name;
  double max_lhs = 0.0;
  double bound = 0.0;
  bool constrained = true;
  bool passed = true;
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  bool passed = true;
  const InequalityRow* find(const std::string& name) const;
};

/// Sampled sup of |g(z) + 1/z - rhs| (|g| on D) on every region with
/// disk_samples(region, density).
InequalityReport verify_inequalities(const DiskConfig& config, const EntireApprox& approx,
                                     int density = 64);

struct InclusionRow {
  std::string name;  ///< e.g. "f(A_1) in 1/A_2"
  bool prerequisites = false;
  bool all_inside = false;
  bool established = false;
  double worst_margin = 0.0;  ///< min over samples of radius - distance to target center
  std::size_t samples = 0;
};

struct InclusionReport {
  std::vector<InclusionRow> rows;
  bool passed = true;
  const InclusionRow* find(const std::string& name) const;
};

/// Samples f = g + 1/z on each source region and tests membership of the
/// images in f(A_m) ⊂ 1/A_{m+1}, f²(A_m) ⊂ A_{m+1}, f(B_m) ⊂ B_+, f(B_+) ⊂ B_+.
/// An inclusion is established only if its inequality prerequisites pass
/// (checked at density 64) and every sample lands inside.
InclusionReport verify_inclusions(const DiskConfig& config, const EntireApprox& approx,
                                  int density = 256);

struct FitAttempt {
  int degree;
  InequalityReport report;
};

struct FitSearch {
  EntireApprox best;  ///< the passing fit, or the one with the smallest worst ratio
  bool passed = false;
  std::vector<FitAttempt> attempts;
};

/// Fits at start_degree, doubling until verify_inequalities passes or the
/// degree would exceed max_degree.
FitSearch fit_with_escalation(const DiskConfig& config, int start_degree = 8, int max_degree = 256,
                              const FitOptions& options = {}, int density = 64);

/// Name of the first region containing z, checking A_m, 1/A_m, B_m, B_+,
/// B_-, D in that order; empty when none does.
std::string region_label(const DiskConfig& config, Complex z);

struct PingPongDemo {
  OrbitRecord orbit;  ///< annotations hold region labels
  PingPongParams params;
  PingPongVerdict verdict;
};

/// Iterates f = g + 1/z from k_1 and checks the pattern A_1, 1/A_2, A_2,
/// 1/A_3, ... Throws ConstructionError (index = step) on the first step
/// whose point is outside the expected region or whose expected region lies
/// beyond the truncation. Runs detect_ping_pong with pole 0,
/// δ = 2 max_m (|c(1/A_m)| + r(1/A_m)), R_esc = k_2 - R, M = 1, K_min = 2.
PingPongDemo ping_pong_demo(const DiskConfig& config, const EntireApprox& approx, int steps);

struct ThreadOptions {
  int seed_density = 16;
  NewtonOptions newton{};
};

struct ThreadResult {
  Complex z0;
  std::vector<SpherePoint> orbit;  ///< forward orbit, one entry per region
  std::vector<double> distances;   ///< |orbit[n] - center_n|
};

/// Backward threading from the last region's center: at each step Newton
/// solutions of f(z) = target seeded on a lattice over the previous region
/// are collected and the one inside that region nearest its center wins.
/// The forward orbit of the result is checked against |p_n - c_n| <= r_n + tol.
/// Throws ConstructionError("threading failure at step n ...") when no
/// preimage lies in region n-1, or when forward verification fails.
ThreadResult thread_orbit(const MeromorphicMap& map, const std::vector<DiskRegion>& regions,
                          double tol, const ThreadOptions& options = {});

void write_config_report(std::ostream& os, const DiskConfig& config);
void write_inequality_report(std::ostream& os, const InequalityReport& report);
void write_inclusion_report(std::ostream& os, const InclusionReport& report);
/// CSV index,re,im of the basis coefficients.
void write_coefficients_csv(std::ostream& os, const EntireApprox& approx);
/// CSV row,col,re,im of the nonzero Hessenberg entries.
void write_hessenberg_csv(std::ostream& os, const EntireApprox& approx);

}  // namespace mero
