#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mero/disk.hpp"
#include "mero/map.hpp"
#include "mero/newton.hpp"
#include "mero/orbit.hpp"

namespace mero {

/// Points merged at this Euclidean distance.
inline constexpr double kMergeTolerance = 1e-9;

/// A duplicate-free point set; generations[i] is the backward depth at which
/// points[i] was first found.
struct PointCloud {
  std::vector<Complex> points;
  std::vector<int> generations;
  int generation = 0;  ///< deepest generation requested

  std::size_t size() const noexcept { return points.size(); }
};

/// Solutions of f(z) = w inside `region`, found by Newton from the
/// seed_density x seed_density cell centers of the region. For w = infinity
/// the result is the declared poles in the region. Points are merged within
/// kMergeTolerance and sorted by (re, im). Generation is 1.
PointCloud preimages(const MeromorphicMap& map, const SpherePoint& w, const Rect& region,
                     int seed_density, int workers = 1, const NewtonOptions& options = {});

/// Generation 1: declared poles in the region; generation g: preimages of
/// generation g-1 not already present. Requires depth >= 1.
PointCloud pole_backward_orbit(const MeromorphicMap& map, int depth, const Rect& region,
                               int seed_density, int workers = 1);

/// CSV with columns re,im,generation.
void write_cloud_csv(std::ostream& os, const PointCloud& cloud);

enum class CellLabel : std::uint8_t { Escaping, Bounded, NearPole, Undecided };

std::string to_string(CellLabel label);
int gray_level(CellLabel label);

struct GridSpec {
  Rect window;
  int width = 64;
  int height = 64;

  void validate() const;
};

struct RenderParams {
  int max_steps = 100;
  double escape_radius = kDefaultEscapeRadius;
  double pole_eps = kDefaultPoleEps;
  int workers = 1;
};

struct RasterGrid {
  Rect window;
  int width = 0;
  int height = 0;
  std::vector<CellLabel> cells;  ///< row-major, row 0 at the top

  CellLabel at(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(col)];
  }
  Complex center(int col, int row) const;
  friend bool operator==(const RasterGrid&, const RasterGrid&) = default;
};

/// The classification window used by render for a given step budget.
int render_window(int max_steps);

CellLabel label_for(OrbitClass c);

/// Classifies the orbit of every cell center. Rows are split across
/// params.workers threads; the result does not depend on the worker count.
RasterGrid render(const MeromorphicMap& map, const GridSpec& grid, const RenderParams& params = {});

/// Fraction of cells with equal labels. Throws DomainError on shape mismatch.
double raster_agreement(const RasterGrid& a, const RasterGrid& b);

/// Plain PGM (P2). Each header line is written as a "# " comment after the
/// magic number.
void write_pgm(std::ostream& os, const RasterGrid& grid, const std::vector<std::string>& comments = {});

/// CSV with columns row,col,re,im,label.
void write_raster_csv(std::ostream& os, const RasterGrid& grid);

struct BlowupParams {
  int disk_samples = 20000;      ///< forward samples of B(z, r)
  double tolerance = 1e-3;       ///< chordal hit distance
  int refine_candidates = 4;     ///< nearest images refined by Newton
  double refine_radius = 0.25;   ///< only images this close (chordal) are refined
  int refine_steps = 40;
  int workers = 1;
};

/// coverage[n-1] is the fraction of `targets` w for which some point of the
/// closed disk B(z, r) is found with chordal(f^n(point), w) < tolerance,
/// for n = 1..iterations. Sampling is a fixed sunflower lattice; misses are
/// refined by Newton's method on f^n. Empty for iterations = 0.
std::vector<double> probe_blowup(const MeromorphicMap& map, Complex z, double r,
                                 const std::vector<Complex>& targets, int iterations,
                                 const BlowupParams& params = {});

}  // namespace mero
