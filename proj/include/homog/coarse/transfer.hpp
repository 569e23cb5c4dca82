#pragma once

#include "homog/coarse/solution.hpp"

namespace homog::coarse {

/// Moves a piecewise-constant field to another grid of the same hierarchy:
/// refinement copies each value into its 2^d children, coarsening averages
/// them. Restriction after prolongation returns the original values.
SolutionField grid_transfer(const SolutionField& field, const CoarseGrid& target);

/// ||u - ref|| / ||ref|| in the cell-measure-weighted discrete L2 norm,
/// after transferring both fields to the finer of the two grids.
double l2_relative_error(const SolutionField& u, const SolutionField& ref);

}  // namespace homog::coarse
