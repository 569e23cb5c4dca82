#include "homog/field/analytic1d.hpp"

#include <cmath>
#include <numbers>

namespace homog::field {

using std::numbers::pi;

SineSeparableFamily::SineSeparableFamily(Params p, std::uint64_t stream_id)
    : p_(p) {
  if (p_.N <= 0 || p_.eps <= 0 || p_.C <= 0)
    throw ParameterError("sine-separable: need N > 0, eps > 0, C > 0");
  phi_.resize(p_.N);
  for (int i = 0; i < p_.N; ++i)
    phi_[i] = 0.2 + 1.8 * rng::setup_uniform(stream_id, i);
}

SineSeparableFamily::Realization SineSeparableFamily::realize(
    const SeedPair& seed) const {
  Realization r;
  r.omega = rng::macro_uniform(seed, 0);
  r.chi.resize(p_.N);
  for (int i = 0; i < p_.N; ++i) r.chi[i] = rng::micro_uniform(seed, i);
  return r;
}

double SineSeparableFamily::inverse_coefficient(const Realization& r,
                                                double x) const {
  double s = p_.C;
  for (int i = 0; i < p_.N; ++i) {
    const double u = std::sin(2.0 * pi * x * phi_[i] / p_.eps);
    s += r.chi[i] * u * u;
  }
  return s * std::exp(r.omega);
}

double SineSeparableFamily::apparent_closed_form(const Realization& r,
                                                 double a, double b) const {
  // integral of sin^2(2 pi x phi / eps) over [a,b] =
  //   (b-a)/2 - eps [sin(4 pi b phi/eps) - sin(4 pi a phi/eps)] / (8 pi phi)
  double integral = p_.C * (b - a);
  for (int i = 0; i < p_.N; ++i) {
    const double w = 4.0 * pi * phi_[i] / p_.eps;
    integral += r.chi[i] *
                (0.5 * (b - a) - (std::sin(w * b) - std::sin(w * a)) / (2.0 * w));
  }
  integral *= std::exp(r.omega);
  return (b - a) / integral;
}

CoefficientBounds SineSeparableFamily::bounds_on_coefficient() const {
  // A^{-1} ranges over [C, (C + N) e] for chi, omega in [0,1].
  const double e = std::exp(1.0);
  return {1.0 / ((p_.C + p_.N) * e), 1.0 / p_.C};
}

double UnitIntervalStationaryFamily::omega(const SeedPair& seed) const {
  return rng::macro_uniform(seed, 0);
}

double UnitIntervalStationaryFamily::chi(const SeedPair& seed,
                                         std::int64_t interval) const {
  return rng::micro_uniform(seed, static_cast<std::uint64_t>(interval));
}

double UnitIntervalStationaryFamily::inverse_coefficient(const SeedPair& seed,
                                                         double x) const {
  const auto cell = static_cast<std::int64_t>(std::floor(x));
  const double u = std::sin(2.0 * pi * x);
  return (p_.C + chi(seed, cell) * u * u) * std::exp(omega(seed));
}

double UnitIntervalStationaryFamily::apparent_closed_form(const SeedPair& seed,
                                                          std::int64_t a,
                                                          std::int64_t b) const {
  if (b <= a)
    throw ParameterError("stationary family: need integer bounds a < b");
  // sin^2(2 pi x) integrates to 1/2 over each unit interval.
  double s = 0.0;
  for (std::int64_t i = a; i < b; ++i) s += chi(seed, i);
  const double integral =
      std::exp(omega(seed)) * (p_.C * double(b - a) + 0.5 * s);
  return double(b - a) / integral;
}

double UnitIntervalStationaryFamily::apparent_forced(
    double omega_value, const std::vector<double>& chi_values, std::int64_t a,
    std::int64_t b) const {
  if (b <= a || chi_values.size() < static_cast<std::size_t>(b - a))
    throw ParameterError("stationary family: bad forced realization");
  double s = 0.0;
  for (std::int64_t i = 0; i < b - a; ++i) s += chi_values[i];
  const double integral =
      std::exp(omega_value) * (p_.C * double(b - a) + 0.5 * s);
  return double(b - a) / integral;
}

double UnitIntervalStationaryFamily::apparent_reference() const {
  // E[exp(-omega)] = 1 - 1/e for omega ~ U[0,1]; E[chi] = 1/2.
  return (1.0 - std::exp(-1.0)) / (p_.C + 0.25);
}

ExpCosNonSeparableFamily::Realization ExpCosNonSeparableFamily::realize(
    const SeedPair& seed) const {
  Realization r;
  r.omega = 0.5 + 0.5 * rng::macro_uniform(seed, 0);
  r.omega_prime = 0.5 + 0.5 * rng::micro_uniform(seed, 0);
  return r;
}

double ExpCosNonSeparableFamily::inverse_coefficient(const Realization& r,
                                                     double x) const {
  const double t = x / p_.eps;
  return p_.C * (1.0 + r.omega) +
         std::exp(r.omega * r.omega_prime * std::sin(t)) * std::cos(t);
}

double ExpCosNonSeparableFamily::apparent_closed_form(const Realization& r,
                                                      double a,
                                                      double b) const {
  if (b <= a) throw ParameterError("expcos family: need a < b");
  // d/dx exp(w sin(x/eps)) = (w/eps) exp(w sin(x/eps)) cos(x/eps)
  const double w = r.omega * r.omega_prime;
  const double integral =
      p_.C * (1.0 + r.omega) * (b - a) +
      (p_.eps / w) *
          (std::exp(w * std::sin(b / p_.eps)) - std::exp(w * std::sin(a / p_.eps)));
  return (b - a) / integral;
}

double ExpCosNonSeparableFamily::apparent_reference() const {
  // E[1 / (C (1 + omega))] with omega ~ U[1/2, 1] is 2 ln(4/3) / C.
  return 2.0 * std::log(4.0 / 3.0) / p_.C;
}

CoefficientBounds ExpCosNonSeparableFamily::bounds_on_coefficient() const {
  const double e = std::exp(1.0);
  const double lo = 1.5 * p_.C - e;  // C(1+omega) >= 1.5 C, |exp sin cos| <= e
  const double hi = 2.0 * p_.C + e;
  return {1.0 / hi, 1.0 / lo};
}

double harmonic_mean_midpoint(const std::function<double(double)>& a_inv,
                              double a, double b, int cells) {
  if (!(b > a) || cells <= 0)
    throw ParameterError("harmonic mean: need a < b and cells > 0");
  const double h = (b - a) / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) s += a_inv(a + (i + 0.5) * h);
  return cells / s;
}

ScalarFieldSample sample_inverse_on_grid(
    const std::function<double(double)>& a_inv, double a, double b,
    int cells) {
  ScalarFieldSample out;
  out.grid = make_grid_1d(a, cells, (b - a) / cells);
  out.values.resize(cells);
  for (int i = 0; i < cells; ++i)
    out.values[i] = 1.0 / a_inv(out.grid.center(0, i));
  return out;
}

}  // namespace homog::field
