#include <algorithm>
#include <ostream>

#include "mero/error.hpp"
#include "mero/format.hpp"
#include "mero/julia.hpp"
#include "mero/parallel.hpp"

namespace mero {

std::string to_string(CellLabel label) {
  switch (label) {
    case CellLabel::Escaping:
      return "escaping";
    case CellLabel::Bounded:
      return "bounded";
    case CellLabel::NearPole:
      return "near-pole";
    case CellLabel::Undecided:
      return "undecided";
  }
  return "undecided";
}

int gray_level(CellLabel label) {
  switch (label) {
    case CellLabel::Escaping:
      return 255;
    case CellLabel::Bounded:
      return 0;
    case CellLabel::NearPole:
      return 128;
    case CellLabel::Undecided:
      return 64;
  }
  return 64;
}

void GridSpec::validate() const {
  window.validate();
  if (width < 1 || height < 1) throw DomainError("grid dimensions must be positive");
}

Complex RasterGrid::center(int col, int row) const {
  const double dx = (window.re_max - window.re_min) / width;
  const double dy = (window.im_max - window.im_min) / height;
  return {window.re_min + (col + 0.5) * dx, window.im_max - (row + 0.5) * dy};
}

int render_window(int max_steps) { return std::clamp(max_steps / 2, 1, kDefaultClassifyWindow); }

CellLabel label_for(OrbitClass c) {
  switch (c) {
    case OrbitClass::Escaping:
      return CellLabel::Escaping;
    case OrbitClass::Bounded:
      return CellLabel::Bounded;
    case OrbitClass::HitPole:
      return CellLabel::NearPole;
    case OrbitClass::BungeeSuspect:
    case OrbitClass::Undecided:
      return CellLabel::Undecided;
  }
  return CellLabel::Undecided;
}

RasterGrid render(const MeromorphicMap& map, const GridSpec& grid, const RenderParams& params) {
  grid.validate();
  RasterGrid out;
  out.window = grid.window;
  out.width = grid.width;
  out.height = grid.height;
  out.cells.resize(static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(grid.height));
  const int window = render_window(params.max_steps);
  const auto rows = static_cast<std::size_t>(grid.height);
  parallel_for(rows, params.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      for (int col = 0; col < grid.width; ++col) {
        const Complex c = out.center(col, static_cast<int>(row));
        const OrbitRecord orbit = iterate(map, c, params.max_steps, params.pole_eps, params.escape_radius);
        out.cells[row * static_cast<std::size_t>(grid.width) + static_cast<std::size_t>(col)] =
            label_for(classify(orbit, window));
      }
    }
  });
  return out;
}

double raster_agreement(const RasterGrid& a, const RasterGrid& b) {
  if (a.width != b.width || a.height != b.height || !(a.window == b.window) ||
      a.cells.size() != b.cells.size()) {
    throw DomainError("raster shapes differ");
  }
  if (a.cells.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) same += a.cells[i] == b.cells[i];
  return static_cast<double>(same) / static_cast<double>(a.cells.size());
}

void write_pgm(std::ostream& os, const RasterGrid& grid, const std::vector<std::string>& comments) {
  os << "P2\n";
  for (const std::string& c : comments) os << "# " << c << '\n';
  os << grid.width << ' ' << grid.height << "\n255\n";
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      if (col > 0) os << ' ';
      os << gray_level(grid.at(col, row));
    }
    os << '\n';
  }
}

void write_raster_csv(std::ostream& os, const RasterGrid& grid) {
  os << "row,col,re,im,label\n";
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      const Complex c = grid.center(col, row);
      os << row << ',' << col << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << ','
         << to_string(grid.at(col, row)) << '\n';
    }
  }
}

}  // namespace mero
