#include "homog/cell/harmonic.hpp"

#include "homog/errors.hpp"

namespace homog::cell {
namespace {

struct AxisMeans {
  double harmonic = 0.0;
  double plain = 0.0;
};

AxisMeans axis_means(const std::function<double(double)>& a, double lo,
                     double hi, int cells) {
  if (!(hi > lo)) throw ParameterError("quadrature interval is empty");
  if (cells < 1) throw ParameterError("quadrature needs at least one cell");
  const double h = (hi - lo) / cells;
  double inv_sum = 0.0, sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double v = a(lo + (i + 0.5) * h);
    if (!(v > 0.0)) throw CoercivityError("coefficient is not positive on the interval");
    inv_sum += 1.0 / v;
    sum += v;
  }
  return {static_cast<double>(cells) / inv_sum, sum / cells};
}

}  // namespace

double apparent_scalar_1d(const std::function<double(double)>& a, double lo,
                          double hi, int quad_cells) {
  return axis_means(a, lo, hi, quad_cells).harmonic;
}

HomogenizedTensor apparent_tensor_noflow_product(
    const std::function<double(double)>& a1,
    const std::function<double(double)>& a2, double lo0, double hi0,
    double lo1, double hi1, int quad_cells) {
  const AxisMeans m1 = axis_means(a1, lo0, hi0, quad_cells);
  const AxisMeans m2 = axis_means(a2, lo1, hi1, quad_cells);
  HomogenizedTensor out;
  out.dim = 2;
  out.form = TensorForm::FluxAverage;
  out.e[0][0] = m1.harmonic * m2.plain;
  out.e[1][1] = m2.harmonic * m1.plain;
  return out;
}

}  // namespace homog::cell
