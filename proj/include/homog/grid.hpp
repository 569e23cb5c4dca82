#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "homog/errors.hpp"

namespace homog {

/// Uniform cell-centered rectangular grid with square cells.
/// 1D grids are represented with cells[1] == 1 and dim == 1.
struct GridSpec {
  std::array<double, 2> origin{0.0, 0.0};
  std::array<int, 2> cells{1, 1};
  double h = 1.0;
  int dim = 2;

  std::size_t cell_count() const {
    return static_cast<std::size_t>(cells[0]) *
           static_cast<std::size_t>(cells[1]);
  }
  double extent(int axis) const { return cells[axis] * h; }
  double center(int axis, int index) const {
    return origin[axis] + (index + 0.5) * h;
  }
  std::size_t flat(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * cells[0] + ix;
  }
  double cell_volume() const { return dim == 1 ? h : h * h; }

  bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid_1d(double origin, int n, double h) {
  if (n <= 0 || h <= 0) throw ParameterError("grid: need n > 0 and h > 0");
  GridSpec g;
  g.origin = {origin, 0.0};
  g.cells = {n, 1};
  g.h = h;
  g.dim = 1;
  return g;
}

inline GridSpec make_grid_2d(double ox, double oy, int nx, int ny, double h) {
  if (nx <= 0 || ny <= 0 || h <= 0)
    throw ParameterError("grid: need nx, ny > 0 and h > 0");
  GridSpec g;
  g.origin = {ox, oy};
  g.cells = {nx, ny};
  g.h = h;
  g.dim = 2;
  return g;
}

/// Hard bounds a coefficient field is known to respect (used for
/// ellipticity checks before a solve).
struct CoefficientBounds {
  double a_min = 0.0;
  double a_max = 0.0;
};

/// One realization of a scalar coefficient field, cell values in row-major
/// order (x fastest).
struct ScalarFieldSample {
  GridSpec grid;
  std::vector<double> values;
  std::optional<CoefficientBounds> bounds;
};

/// Cell-index window [lo, lo+count) per axis, for restricting a sample to a
/// sub-RVE that shares the parent's cell lattice.
struct SubBox {
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> count{1, 1};
};

inline ScalarFieldSample crop(const ScalarFieldSample& s, const SubBox& box) {
  const auto& g = s.grid;
  for (int ax = 0; ax < g.dim; ++ax) {
    if (box.lo[ax] < 0 || box.count[ax] <= 0 ||
        box.lo[ax] + box.count[ax] > g.cells[ax])
      throw StructureError("crop: sub-box exceeds parent grid");
  }
  ScalarFieldSample out;
  out.grid = g;
  out.grid.origin = {g.origin[0] + box.lo[0] * g.h,
                     g.origin[1] + box.lo[1] * g.h};
  out.grid.cells = {box.count[0], g.dim == 1 ? 1 : box.count[1]};
  out.values.resize(out.grid.cell_count());
  const int ny = g.dim == 1 ? 1 : box.count[1];
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < box.count[0]; ++ix)
      out.values[out.grid.flat(ix, iy)] =
          s.values[g.flat(box.lo[0] + ix, box.lo[1] + iy)];
  out.bounds = s.bounds;
  return out;
}

}  // namespace homog
