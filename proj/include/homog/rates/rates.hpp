#pragma once

#include <vector>

namespace homog::rates {

/// One regression point: x = ln(epsilon / eta_l), y = ln of the mean squared
/// deviation on level l, bar = delta-method standard error of y.
struct RatePoint {
  double x = 0.0;
  double y = 0.0;
  double bar = 0.0;
};

struct RateEstimate {
  double beta = 0.0;
  double ln_c = 0.0;
  double stderr_beta = 0.0;
  std::vector<RatePoint> points;
};

/// Mean of the per-level means. Used as the proxy for the unreachable exact
/// homogenized value when fitting convergence rates.
double pooled_reference(const std::vector<std::vector<double>>& samples);

/// Fits ln E|d|^2 = ln C + beta ln(epsilon/eta) by ordinary least squares
/// over the levels, with the squared deviations supplied directly (callers
/// with tensor data pass squared Frobenius deviations per sample).
RateEstimate estimate_beta_from_squares(
    const std::vector<std::vector<double>>& squares,
    const std::vector<double>& eta, double epsilon);

/// Scalar convenience: squares each sample's deviation from `reference` and
/// runs the regression above.
RateEstimate estimate_beta(const std::vector<std::vector<double>>& samples,
                           double reference, const std::vector<double>& eta,
                           double epsilon);

}  // namespace homog::rates
