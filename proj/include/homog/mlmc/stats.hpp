#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace homog::mlmc {

struct ErrorStats {
  double relative_mse = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int nb = 0;
};

/// Mean of already-squared relative errors with a 1.96 std / sqrt(Nb)
/// confidence band. Needs at least two repetitions.
ErrorStats score_squared_errors(const std::vector<double>& squared_errors);

/// Runs the experiment nb times on disjoint seed blocks (repetition b sees
/// seed_base = b * seed_stride) and scores ((value - reference)/reference)^2.
/// Repetitions run concurrently; scoring folds in repetition order.
ErrorStats repeat_and_score(
    const std::function<double(std::uint64_t seed_base)>& experiment,
    double reference, int nb, std::uint64_t seed_stride, int threads = 1);

}  // namespace homog::mlmc
