#include "homog/mlmc/stats.hpp"

#include <cmath>

#include "homog/errors.hpp"
#include "homog/parallel.hpp"

namespace homog::mlmc {

ErrorStats score_squared_errors(const std::vector<double>& squared_errors) {
  const std::size_t nb = squared_errors.size();
  if (nb < 2) throw ParameterError("error scoring needs at least two repetitions");
  double mean = 0.0;
  for (double e : squared_errors) mean += e;
  mean /= static_cast<double>(nb);
  double var = 0.0;
  for (double e : squared_errors) var += (e - mean) * (e - mean);
  var /= static_cast<double>(nb - 1);
  const double half = 1.96 * std::sqrt(var / static_cast<double>(nb));

  ErrorStats out;
  out.relative_mse = mean;
  out.ci_low = mean - half;
  out.ci_high = mean + half;
  out.nb = static_cast<int>(nb);
  return out;
}

ErrorStats repeat_and_score(
    const std::function<double(std::uint64_t seed_base)>& experiment,
    double reference, int nb, std::uint64_t seed_stride, int threads) {
  if (!experiment) throw ParameterError("null experiment");
  if (nb < 2) throw ParameterError("need at least two repetitions");
  if (reference == 0.0) throw ParameterError("reference value must be nonzero");
  if (seed_stride == 0) throw ParameterError("seed stride must be positive");
  if (threads < 1) threads = 1;

  std::vector<double> sq(static_cast<std::size_t>(nb), 0.0);
  parallel_for(static_cast<std::size_t>(nb), threads, [&](std::size_t b) {
    const double value = experiment(static_cast<std::uint64_t>(b) * seed_stride);
    const double rel = (value - reference) / reference;
    sq[b] = rel * rel;
  });
  return score_squared_errors(sq);
}

}  // namespace homog::mlmc
