#include "homog/cell/tensor.hpp"

#include <cstddef>

#include "homog/errors.hpp"

namespace homog::cell {
namespace {

double harm(double a, double b) { return 2.0 * a * b / (a + b); }

// Ghost-side difference of corrector d across a boundary face normal to
// e_axis. Faces without Dirichlet data for that corrector carry no discrete
// normal gradient.
double boundary_delta(const CellSolution& chi, int axis, bool high,
                      double face_coord_d, double cell_value) {
  if (chi.bc == CorrectorBc::DirichletNoFlow && axis != chi.direction)
    return 0.0;
  return high ? face_coord_d - cell_value : cell_value - face_coord_d;
}

}  // namespace

double HomogenizedTensor::scalar() const {
  return dim == 1 ? e[0][0] : 0.5 * (e[0][0] + e[1][1]);
}

HomogenizedTensor apparent_tensor(const ScalarFieldSample& coeff,
                                  const std::vector<CellSolution>& correctors,
                                  TensorForm form) {
  const GridSpec& g = coeff.grid;
  const int dim = g.dim;
  if (static_cast<int>(correctors.size()) != dim)
    throw ParameterError("expected one corrector per space direction");
  for (int d = 0; d < dim; ++d) {
    const CellSolution& c = correctors[static_cast<std::size_t>(d)];
    if (c.direction != d)
      throw ParameterError("correctors must be ordered by direction");
    if (!(c.grid == g))
      throw StructureError("corrector grid does not match the coefficient grid");
    if (c.bc != correctors[0].bc)
      throw ParameterError("correctors mix boundary treatments");
  }

  const double area = (dim == 2) ? g.h : 1.0;
  const std::vector<double>& a = coeff.values;
  const auto idx = [&](int ix, int iy) { return g.flat(ix, iy); };
  const auto chi = [&](int d, std::size_t c) {
    return correctors[static_cast<std::size_t>(d)].values[c];
  };

  HomogenizedTensor out;
  out.dim = dim;
  out.form = form;

  // Face coordinate of the Dirichlet data for corrector d, RVE-local. On a
  // face normal to e_axis the coordinate along that axis is 0 or the full
  // extent; along the other axis it is the cell-center coordinate.
  const auto face_coord = [&](int d, int axis, bool high, int other_index) {
    if (d == axis) return high ? g.extent(axis) : 0.0;
    return g.center(1 - axis, other_index) - g.origin[1 - axis];
  };

  double acc[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double delta[2] = {0.0, 0.0};

  const auto accumulate = [&](int axis, double t, double w) {
    if (form == TensorForm::FluxAverage) {
      for (int d = 0; d < dim; ++d) acc[axis][d] += t * delta[d] * w;
    } else {
      for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) acc[m][n] += t * delta[m] * delta[n];
    }
  };

  const int nx = g.cells[0], ny = g.cells[1];
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const std::size_t c = idx(ix, iy), e = idx(ix + 1, iy);
      const double t = harm(a[c], a[e]) * area / g.h;
      for (int d = 0; d < dim; ++d) delta[d] = chi(d, e) - chi(d, c);
      accumulate(0, t, g.h);
    }
    const std::size_t lo = idx(0, iy), hi = idx(nx - 1, iy);
    for (int d = 0; d < dim; ++d)
      delta[d] = boundary_delta(correctors[static_cast<std::size_t>(d)], 0,
                                false, face_coord(d, 0, false, iy), chi(d, lo));
    accumulate(0, 2.0 * a[lo] * area / g.h, 0.5 * g.h);
    for (int d = 0; d < dim; ++d)
      delta[d] = boundary_delta(correctors[static_cast<std::size_t>(d)], 0,
                                true, face_coord(d, 0, true, iy), chi(d, hi));
    accumulate(0, 2.0 * a[hi] * area / g.h, 0.5 * g.h);
  }
  if (dim == 2) {
    for (int ix = 0; ix < nx; ++ix) {
      for (int iy = 0; iy + 1 < ny; ++iy) {
        const std::size_t c = idx(ix, iy), nb = idx(ix, iy + 1);
        const double t = harm(a[c], a[nb]) * area / g.h;
        for (int d = 0; d < dim; ++d) delta[d] = chi(d, nb) - chi(d, c);
        accumulate(1, t, g.h);
      }
      const std::size_t lo = idx(ix, 0), hi = idx(ix, ny - 1);
      for (int d = 0; d < dim; ++d)
        delta[d] = boundary_delta(correctors[static_cast<std::size_t>(d)], 1,
                                  false, face_coord(d, 1, false, ix), chi(d, lo));
      accumulate(1, 2.0 * a[lo] * area / g.h, 0.5 * g.h);
      for (int d = 0; d < dim; ++d)
        delta[d] = boundary_delta(correctors[static_cast<std::size_t>(d)], 1,
                                  true, face_coord(d, 1, true, ix), chi(d, hi));
      accumulate(1, 2.0 * a[hi] * area / g.h, 0.5 * g.h);
    }
  }

  double vol = g.extent(0);
  if (dim == 2) vol *= g.extent(1);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) out.e[m][n] = acc[m][n] / vol;
  return out;
}

}  // namespace homog::cell
