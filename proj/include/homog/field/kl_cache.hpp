#pragma once

#include <optional>
#include <string>

#include "homog/field/gaussian.hpp"

namespace homog::field {

// Binary cache for a KL decomposition so repeated CLI runs skip the
// eigensolve. Layout (all little-endian): u64 magic, u64 spec hash,
// u64 grid hash, u64 mode count, u64 cell count, then the eigenvalue array
// and the mode (eigenvector) array as 64-bit floats.

void save_kl_cache(const std::string& path, const KlDecomposition& kl);

/// Returns the cached decomposition when the file exists and its header
/// matches (spec, grid, tolerance); any mismatch or unreadable file is a
/// cache miss, not an error.
std::optional<KlDecomposition> load_kl_cache(const std::string& path,
                                             const CovarianceSpec& spec,
                                             const GridSpec& grid,
                                             double mode_tolerance);

}  // namespace homog::field
