#include "homog/field/macro.hpp"

#include <cmath>
#include <numbers>

namespace homog::field {

double eval_macro_exp_gaussian(const SeedPair& seed) {
  return std::exp(rng::macro_gaussian(seed, 0));
}

double eval_macro_sine_abs(const SeedPair& seed, double x1, double x2) {
  using std::numbers::pi;
  const double w1 = rng::macro_gaussian(seed, 0);
  const double w2 = rng::macro_gaussian(seed, 1);
  const double w3 = rng::macro_gaussian(seed, 2);
  return 2.0 + std::abs(w1 * std::sin(2.0 * pi * x1)) +
         std::abs(w2 * std::sin(2.0 * pi * x2)) +
         std::abs(w3 * std::sin(pi * x1));
}

}  // namespace homog::field
