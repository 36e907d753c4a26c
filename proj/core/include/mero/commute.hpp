#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mero/julia.hpp"
#include "mero/map.hpp"

namespace mero {

/// Samples within this distance of a declared pole (or whose first images
/// are) are left out of the discrepancy statistics.
inline constexpr double kCommutePoleEps = 1e-6;

struct CommuteViolation {
  std::size_t index;  ///< position in the sample list
  Complex z;
  SpherePoint fg;  ///< f(g(z))
  SpherePoint gf;  ///< g(f(z))
  double discrepancy;
};

struct CommuteReport {
  std::size_t pairs_tested = 0;  ///< samples that entered the statistics
  double max_discrepancy = 0.0;
  std::size_t both_undefined_count = 0;
  std::size_t near_pole_excluded = 0;
  double tolerance = 0.0;
  std::vector<CommuteViolation> violations;  ///< sorted by sample index

  bool passed() const noexcept { return violations.empty(); }
};

/// Pointwise check of f(g(z)) = g(f(z)) in the chordal metric. A
/// composition whose inner value is infinite counts as infinite; when both
/// sides are infinite the sample counts under both_undefined_count. A
/// sample is a violation when its chordal discrepancy exceeds tol.
CommuteReport check_commuting(const MeromorphicMap& f, const MeromorphicMap& g,
                              const std::vector<Complex>& samples, double tol,
                              double pole_eps = kCommutePoleEps, int workers = 1);

/// True iff each declared pole of f has a declared pole of g within tol and
/// vice versa.
bool shared_poles(const MeromorphicMap& f, const MeromorphicMap& g, double tol);

/// Text report: counters, then one line per violation.
void write_commute_report(std::ostream& os, const CommuteReport& report);
/// CSV with columns index,re,im,fg_re,fg_im,gf_re,gf_im,discrepancy.
void write_violations_csv(std::ostream& os, const CommuteReport& report);

struct JuliaComparison {
  CommuteReport probe;
  RasterGrid f_grid;
  RasterGrid g_grid;
  double agreement = 0.0;
};

inline constexpr int kProbeGridSize = 32;
inline constexpr double kProbeTolerance = 1e-9;

/// Checks commuting on the 32 x 32 cell centers of the grid window
/// (tolerance 1e-9) and throws DomainError if that probe fails; otherwise
/// renders both maps and compares the rasters.
JuliaComparison julia_equality_experiment(const MeromorphicMap& f, const MeromorphicMap& g,
                                          const GridSpec& grid, const RenderParams& params = {});

}  // namespace mero
