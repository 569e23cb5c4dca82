#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homog/grid.hpp"
#include "homog/rng.hpp"

namespace homog::field {

// Three analytic one-dimensional microstructure families. Each exposes the
// inverse coefficient x -> A^{-1}(x) for a given realization plus a closed
// form for the apparent (harmonically averaged) coefficient on an interval,
//   A*_{a,b} = (b - a) / integral_a^b A^{-1}.
// Realizations are drawn through the counter RNG, so the same SeedPair seen
// on nested intervals yields pointwise-identical coefficients; that is what
// couples the levels of a multilevel estimator.

/// A^{-1}(x) = [C + sum_i chi_i sin^2(2 pi x phi_i / eps)] * exp(omega),
/// omega ~ U[0,1] (macro draw), chi_i ~ U[0,1] (micro draws). The fixed
/// frequencies phi_i ~ U[0.2, 2] are drawn once per stream at setup and
/// should be echoed into run metadata.
class SineSeparableFamily {
 public:
  struct Params {
    double C = 1.0;
    int N = 20;
    double eps = 0.0125;
  };
  struct Realization {
    double omega = 0.0;
    std::vector<double> chi;
  };

  SineSeparableFamily(Params p, std::uint64_t stream_id);

  Realization realize(const SeedPair& seed) const;
  double inverse_coefficient(const Realization& r, double x) const;
  double apparent_closed_form(const Realization& r, double a, double b) const;
  CoefficientBounds bounds_on_coefficient() const;
  const std::vector<double>& frequencies() const { return phi_; }
  const Params& params() const { return p_; }

 private:
  Params p_;
  std::vector<double> phi_;
};

/// A^{-1}(x) = [C + sum_i chi_i 1_{[i,i+1)}(x) sin^2(2 pi x)] * exp(omega)
/// with one chi per unit interval; intervals are indexed by floor(x), so a
/// realization is stationary across nested windows [0, b]. The closed form
/// requires integer endpoints.
class UnitIntervalStationaryFamily {
 public:
  struct Params {
    double C = 1.0;
  };

  explicit UnitIntervalStationaryFamily(Params p) : p_(p) {}

  double omega(const SeedPair& seed) const;
  double chi(const SeedPair& seed, std::int64_t interval) const;
  double inverse_coefficient(const SeedPair& seed, double x) const;
  double apparent_closed_form(const SeedPair& seed, std::int64_t a,
                              std::int64_t b) const;
  /// Same closed form with the draws injected, for oracle tests.
  double apparent_forced(double omega, const std::vector<double>& chi,
                         std::int64_t a, std::int64_t b) const;
  /// Infinite-volume limit (1 - 1/e) / (C + 1/4).
  double apparent_reference() const;
  const Params& params() const { return p_; }

 private:
  Params p_;
};

/// A^{-1}(x) = C (1 + omega) + exp(omega omega' sin(x/eps)) cos(x/eps),
/// omega, omega' ~ U[1/2, 1]. Not a product of slow and fast factors; the
/// closed-form antiderivative of the oscillatory part keeps the apparent
/// coefficient exact on any interval.
class ExpCosNonSeparableFamily {
 public:
  struct Params {
    double C = 2.0 * 2.718281828459045235360287471352662498;  // 2e
    double eps = 0.0125;
  };
  struct Realization {
    double omega = 0.75;
    double omega_prime = 0.75;
  };

  explicit ExpCosNonSeparableFamily(Params p) : p_(p) {}

  Realization realize(const SeedPair& seed) const;
  double inverse_coefficient(const Realization& r, double x) const;
  double apparent_closed_form(const Realization& r, double a, double b) const;
  /// Infinite-volume expectation 2 ln(4/3) / C.
  double apparent_reference() const;
  CoefficientBounds bounds_on_coefficient() const;
  const Params& params() const { return p_; }

 private:
  Params p_;
};

/// Midpoint-rule harmonic mean of a coefficient with inverse `a_inv` on
/// [a, b]: the independent quadrature oracle the closed forms are checked
/// against, and the sampling rule the finite-volume path consumes.
double harmonic_mean_midpoint(const std::function<double(double)>& a_inv,
                              double a, double b, int cells);

/// Cellwise coefficient sample A = 1 / A^{-1}(cell center) on [a, b].
ScalarFieldSample sample_inverse_on_grid(
    const std::function<double(double)>& a_inv, double a, double b, int cells);

}  // namespace homog::field
