#pragma once

#include "homog/rng.hpp"

namespace homog::field {

// Slow (macroscopic) coefficient factors for separable problems
// A(x, y, omega) = A_macro(x, omega) * B(y, omega'). Both depend on the
// macro part of the seed only.

/// Spatially constant factor exp(omega), omega ~ N(0,1).
double eval_macro_exp_gaussian(const SeedPair& seed);

/// 2 + |w1 sin(2 pi x1)| + |w2 sin(2 pi x2)| + |w3 sin(pi x1)|,
/// w_k ~ N(0,1) i.i.d. Bounded below by 2, so products with a positive
/// micro factor stay coercive.
double eval_macro_sine_abs(const SeedPair& seed, double x1, double x2);

}  // namespace homog::field
