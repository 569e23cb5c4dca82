#include "homog/cell/fv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "homog/errors.hpp"
#include "homog/kernels/kernels.hpp"

namespace homog::cell {
namespace {

void check_coercive(const ScalarFieldSample& coeff) {
  if (coeff.bounds && coeff.bounds->a_min <= 0.0)
    throw CoercivityError("coefficient sample declares a_min <= 0");
  for (double v : coeff.values)
    if (!(v > 0.0)) throw CoercivityError("non-positive coefficient value in sample");
}

double harm(double a, double b) { return 2.0 * a * b / (a + b); }

}  // namespace

StructuredOperator assemble_corrector(const ScalarFieldSample& coeff,
                                      int direction, CorrectorBc bc) {
  const GridSpec& g = coeff.grid;
  if (direction < 0 || direction >= g.dim)
    throw ParameterError("corrector direction out of range for grid dimension");
  check_coercive(coeff);

  StructuredOperator op;
  op.nx = g.cells[0];
  op.ny = g.cells[1];
  op.h = g.h;
  op.dim = g.dim;
  const std::size_t n = op.size();
  op.diag.assign(n, 0.0);
  op.tw.assign(n, 0.0);
  op.te.assign(n, 0.0);
  op.ts.assign(n, 0.0);
  op.tn.assign(n, 0.0);
  op.rhs.assign(n, 0.0);

  const double area = (g.dim == 2) ? g.h : 1.0;
  const std::vector<double>& a = coeff.values;
  const auto idx = [&](int ix, int iy) { return g.flat(ix, iy); };

  // Faces normal to e_0.
  for (int iy = 0; iy < op.ny; ++iy) {
    for (int ix = 0; ix + 1 < op.nx; ++ix) {
      const std::size_t c = idx(ix, iy);
      const std::size_t e = idx(ix + 1, iy);
      const double t = harm(a[c], a[e]) * area / g.h;
      op.te[c] = t;
      op.tw[e] = t;
      op.diag[c] += t;
      op.diag[e] += t;
    }
    if (bc == CorrectorBc::DirichletLinear || direction == 0) {
      const std::size_t lo = idx(0, iy);
      const std::size_t hi = idx(op.nx - 1, iy);
      const double tlo = 2.0 * a[lo] * area / g.h;
      const double thi = 2.0 * a[hi] * area / g.h;
      op.diag[lo] += tlo;
      op.diag[hi] += thi;
      // Boundary data chi = y_direction in RVE-local coordinates.
      const double yloc = g.center(1, iy) - g.origin[1];
      op.rhs[lo] += tlo * (direction == 0 ? 0.0 : yloc);
      op.rhs[hi] += thi * (direction == 0 ? g.extent(0) : yloc);
    }
  }

  // Faces normal to e_1.
  if (g.dim == 2) {
    for (int ix = 0; ix < op.nx; ++ix) {
      for (int iy = 0; iy + 1 < op.ny; ++iy) {
        const std::size_t c = idx(ix, iy);
        const std::size_t nb = idx(ix, iy + 1);
        const double t = harm(a[c], a[nb]) * area / g.h;
        op.tn[c] = t;
        op.ts[nb] = t;
        op.diag[c] += t;
        op.diag[nb] += t;
      }
      if (bc == CorrectorBc::DirichletLinear || direction == 1) {
        const std::size_t lo = idx(ix, 0);
        const std::size_t hi = idx(ix, op.ny - 1);
        const double tlo = 2.0 * a[lo] * area / g.h;
        const double thi = 2.0 * a[hi] * area / g.h;
        op.diag[lo] += tlo;
        op.diag[hi] += thi;
        const double xloc = g.center(0, ix) - g.origin[0];
        op.rhs[lo] += tlo * (direction == 1 ? 0.0 : xloc);
        op.rhs[hi] += thi * (direction == 1 ? g.extent(1) : xloc);
      }
    }
  }
  return op;
}

StructuredOperator assemble_dirichlet_poisson(const ScalarFieldSample& coeff,
                                              const std::vector<double>& f_cells) {
  const GridSpec& g = coeff.grid;
  if (f_cells.size() != g.cell_count())
    throw ParameterError("source vector does not match grid cell count");
  check_coercive(coeff);

  StructuredOperator op;
  op.nx = g.cells[0];
  op.ny = g.cells[1];
  op.h = g.h;
  op.dim = g.dim;
  const std::size_t n = op.size();
  op.diag.assign(n, 0.0);
  op.tw.assign(n, 0.0);
  op.te.assign(n, 0.0);
  op.ts.assign(n, 0.0);
  op.tn.assign(n, 0.0);
  op.rhs.assign(n, 0.0);

  const double area = (g.dim == 2) ? g.h : 1.0;
  const std::vector<double>& a = coeff.values;
  const auto idx = [&](int ix, int iy) { return g.flat(ix, iy); };

  for (int iy = 0; iy < op.ny; ++iy) {
    for (int ix = 0; ix + 1 < op.nx; ++ix) {
      const std::size_t c = idx(ix, iy);
      const std::size_t e = idx(ix + 1, iy);
      const double t = harm(a[c], a[e]) * area / g.h;
      op.te[c] = t;
      op.tw[e] = t;
      op.diag[c] += t;
      op.diag[e] += t;
    }
    op.diag[idx(0, iy)] += 2.0 * a[idx(0, iy)] * area / g.h;
    op.diag[idx(op.nx - 1, iy)] += 2.0 * a[idx(op.nx - 1, iy)] * area / g.h;
  }
  if (g.dim == 2) {
    for (int ix = 0; ix < op.nx; ++ix) {
      for (int iy = 0; iy + 1 < op.ny; ++iy) {
        const std::size_t c = idx(ix, iy);
        const std::size_t nb = idx(ix, iy + 1);
        const double t = harm(a[c], a[nb]) * area / g.h;
        op.tn[c] = t;
        op.ts[nb] = t;
        op.diag[c] += t;
        op.diag[nb] += t;
      }
      op.diag[idx(ix, 0)] += 2.0 * a[idx(ix, 0)] * area / g.h;
      op.diag[idx(ix, op.ny - 1)] += 2.0 * a[idx(ix, op.ny - 1)] * area / g.h;
    }
  }

  const double vol = g.cell_volume();
  for (std::size_t c = 0; c < n; ++c) op.rhs[c] = f_cells[c] * vol;
  return op;
}

SolveStats pcg_solve(const StructuredOperator& op, std::vector<double>& x,
                     double tol, int max_iter) {
  if (!(tol > 0.0) || tol > 1e-4)
    throw ParameterError("solver tolerance must lie in (0, 1e-4]");
  const std::size_t n = op.size();
  const std::size_t pad = static_cast<std::size_t>(op.nx);
  if (max_iter <= 0)
    max_iter = static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))) + 1000;

  std::vector<double> dinv(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(op.diag[i] > 0.0))
      throw NumericalError("operator diagonal is not positive");
    dinv[i] = 1.0 / op.diag[i];
  }

  // Padded buffers so the stencil kernel may read one lattice row past either
  // end; the zeroed boundary transmissibilities make those reads harmless.
  std::vector<double> xbuf(n + 2 * pad, 0.0), rbuf(n + 2 * pad, 0.0),
      zbuf(n + 2 * pad, 0.0), pbuf(n + 2 * pad, 0.0), qbuf(n + 2 * pad, 0.0);
  double* xv = xbuf.data() + pad;
  double* rv = rbuf.data() + pad;
  double* zv = zbuf.data() + pad;
  double* pv = pbuf.data() + pad;
  double* qv = qbuf.data() + pad;

  std::copy(op.rhs.begin(), op.rhs.end(), rv);
  const double bnorm = std::sqrt(kernels::dot(rv, rv, n));
  x.assign(n, 0.0);
  if (bnorm == 0.0) return {0.0, 0};

  kernels::hadamard(dinv.data(), rv, zv, n);
  std::copy(zv, zv + n, pv);
  double rz = kernels::dot(rv, zv, n);

  std::vector<double> tail;
  double rel = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    kernels::stencil_apply(n, static_cast<std::size_t>(op.nx), op.diag.data(),
                           op.tw.data(), op.te.data(), op.ts.data(),
                           op.tn.data(), pv, qv);
    const double pq = kernels::dot(pv, qv, n);
    if (!(pq > 0.0))
      throw NumericalError("conjugate gradients met a non-positive curvature direction");
    const double alpha = rz / pq;
    kernels::axpy(alpha, pv, xv, n);
    kernels::axpy(-alpha, qv, rv, n);
    rel = std::sqrt(kernels::dot(rv, rv, n)) / bnorm;
    tail.push_back(rel);
    if (tail.size() > 10) tail.erase(tail.begin());
    if (rel <= tol) {
      std::copy(xv, xv + n, x.begin());
      return {rel, it};
    }
    kernels::hadamard(dinv.data(), rv, zv, n);
    const double rz_next = kernels::dot(rv, zv, n);
    kernels::xpay(zv, rz_next / rz, pv, n);
    rz = rz_next;
  }
  throw SolverError("conjugate gradients exhausted the iteration cap", tail);
}

CellSolution solve_corrector(const ScalarFieldSample& coeff, int direction,
                             CorrectorBc bc, double tol) {
  const StructuredOperator op = assemble_corrector(coeff, direction, bc);
  CellSolution sol;
  sol.direction = direction;
  sol.bc = bc;
  sol.grid = coeff.grid;
  const SolveStats st = pcg_solve(op, sol.values, tol);
  sol.rel_residual = st.rel_residual;
  sol.iterations = st.iterations;
  return sol;
}

}  // namespace homog::cell
