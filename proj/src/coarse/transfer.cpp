#include "homog/coarse/transfer.hpp"

#include <cmath>

#include "homog/errors.hpp"

namespace homog::coarse {
namespace {

// Refinement factor between two hierarchy members, or throws.
int nesting_factor(const CoarseGrid& coarse, const CoarseGrid& fine) {
  if (coarse.d != fine.d)
    throw StructureError("grids of different dimension are not nested");
  const int nc = coarse.cells_per_dim();
  const int nf = fine.cells_per_dim();
  if (nf % nc != 0) throw StructureError("grids are not factor-2 nested");
  int r = nf / nc;
  for (int t = r; t > 1; t /= 2)
    if (t % 2 != 0) throw StructureError("grids are not factor-2 nested");
  return r;
}

}  // namespace

SolutionField grid_transfer(const SolutionField& field, const CoarseGrid& target) {
  const int ns = field.grid.cells_per_dim();
  const int nt = target.cells_per_dim();
  if (field.values.size() != field.grid.cell_count())
    throw StructureError("field value count does not match its grid");

  SolutionField out;
  out.grid = target;
  out.rve_level = field.rve_level;
  out.mesh_level = field.mesh_level;
  if (nt == ns) {
    out.values = field.values;
    return out;
  }

  if (nt > ns) {
    const int r = nesting_factor(field.grid, target);
    out.values.resize(target.cell_count());
    if (target.d == 1) {
      for (int i = 0; i < nt; ++i)
        out.values[static_cast<std::size_t>(i)] =
            field.values[static_cast<std::size_t>(i / r)];
    } else {
      for (int iy = 0; iy < nt; ++iy)
        for (int ix = 0; ix < nt; ++ix)
          out.values[static_cast<std::size_t>(iy) * nt + ix] =
              field.values[static_cast<std::size_t>(iy / r) * ns + ix / r];
    }
    return out;
  }

  const int r = nesting_factor(target, field.grid);
  out.values.assign(target.cell_count(), 0.0);
  const double share = target.d == 1 ? 1.0 / r : 1.0 / (static_cast<double>(r) * r);
  if (target.d == 1) {
    for (int i = 0; i < ns; ++i)
      out.values[static_cast<std::size_t>(i / r)] +=
          field.values[static_cast<std::size_t>(i)] * share;
  } else {
    for (int iy = 0; iy < ns; ++iy)
      for (int ix = 0; ix < ns; ++ix)
        out.values[static_cast<std::size_t>(iy / r) * nt + ix / r] +=
            field.values[static_cast<std::size_t>(iy) * ns + ix] * share;
  }
  return out;
}

double l2_relative_error(const SolutionField& u, const SolutionField& ref) {
  const CoarseGrid& fine =
      u.grid.cells_per_dim() >= ref.grid.cells_per_dim() ? u.grid : ref.grid;
  const SolutionField uf = grid_transfer(u, fine);
  const SolutionField rf = grid_transfer(ref, fine);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < uf.values.size(); ++i) {
    const double d = uf.values[i] - rf.values[i];
    num += d * d;
    den += rf.values[i] * rf.values[i];
  }
  if (den == 0.0) throw NumericalError("reference field has zero norm");
  return std::sqrt(num / den);
}

}  // namespace homog::coarse
