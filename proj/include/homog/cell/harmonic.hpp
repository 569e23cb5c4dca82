#pragma once

#include <functional>

#include "homog/cell/tensor.hpp"

namespace homog::cell {

/// Harmonic integral mean of a over [lo, hi], the exact 1D apparent value,
/// with a midpoint rule on quad_cells subintervals.
double apparent_scalar_1d(const std::function<double(double)>& a, double lo,
                          double hi, int quad_cells);

/// Apparent tensor under no-flow data for a product coefficient
/// A(x) = a1(x1) a2(x2) on [lo0,hi0] x [lo1,hi1]. The corrector in each
/// direction then depends on that coordinate alone, so the tensor is diagonal
/// with entries (harmonic mean along the direction) x (plain mean across it).
/// Quadratures use the midpoint rule on quad_cells subintervals per axis.
HomogenizedTensor apparent_tensor_noflow_product(
    const std::function<double(double)>& a1,
    const std::function<double(double)>& a2, double lo0, double hi0,
    double lo1, double hi1, int quad_cells);

}  // namespace homog::cell
