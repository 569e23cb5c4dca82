#include "homog/rates/rates.hpp"

#include <cmath>

#include "homog/errors.hpp"

namespace homog::rates {

double pooled_reference(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw ParameterError("no levels to pool");
  double pooled = 0.0;
  for (const auto& level : samples) {
    if (level.empty()) throw ParameterError("empty level in pooled reference");
    double mean = 0.0;
    for (double v : level) mean += v;
    pooled += mean / static_cast<double>(level.size());
  }
  return pooled / static_cast<double>(samples.size());
}

RateEstimate estimate_beta_from_squares(
    const std::vector<std::vector<double>>& squares,
    const std::vector<double>& eta, double epsilon) {
  const std::size_t L = squares.size();
  if (L < 2) throw ParameterError("rate fit needs at least two levels");
  if (eta.size() != L)
    throw ParameterError("one RVE size per level is required");
  if (!(epsilon > 0.0)) throw ParameterError("microscale must be positive");
  for (std::size_t l = 0; l < L; ++l) {
    if (!(eta[l] > 0.0)) throw ParameterError("RVE sizes must be positive");
    if (l > 0 && !(eta[l] > eta[l - 1]))
      throw ParameterError("RVE sizes must be strictly increasing");
  }

  RateEstimate est;
  est.points.reserve(L);
  for (std::size_t l = 0; l < L; ++l) {
    const auto& sq = squares[l];
    if (sq.empty()) throw ParameterError("empty level in rate fit");
    double mean = 0.0;
    for (double v : sq) {
      if (!(v >= 0.0)) throw ParameterError("squared deviations must be >= 0");
      mean += v;
    }
    mean /= static_cast<double>(sq.size());
    if (!(mean > 0.0))
      throw NumericalError("level with zero mean squared deviation");
    double var = 0.0;
    for (double v : sq) var += (v - mean) * (v - mean);
    if (sq.size() > 1) var /= static_cast<double>(sq.size() - 1);

    RatePoint p;
    p.x = std::log(epsilon / eta[l]);
    p.y = std::log(mean);
    // First-order error propagation through the log.
    p.bar = std::sqrt(var / static_cast<double>(sq.size())) / mean;
    est.points.push_back(p);
  }

  double xbar = 0.0, ybar = 0.0;
  for (const auto& p : est.points) {
    xbar += p.x;
    ybar += p.y;
  }
  xbar /= static_cast<double>(L);
  ybar /= static_cast<double>(L);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : est.points) {
    sxx += (p.x - xbar) * (p.x - xbar);
    sxy += (p.x - xbar) * (p.y - ybar);
  }
  if (!(sxx > 0.0)) throw NumericalError("degenerate abscissas in rate fit");
  est.beta = sxy / sxx;
  est.ln_c = ybar - est.beta * xbar;

  if (L > 2) {
    double rss = 0.0;
    for (const auto& p : est.points) {
      const double r = p.y - (est.ln_c + est.beta * p.x);
      rss += r * r;
    }
    est.stderr_beta = std::sqrt(rss / static_cast<double>(L - 2) / sxx);
  }
  return est;
}

RateEstimate estimate_beta(const std::vector<std::vector<double>>& samples,
                           double reference, const std::vector<double>& eta,
                           double epsilon) {
  std::vector<std::vector<double>> squares;
  squares.reserve(samples.size());
  for (const auto& level : samples) {
    std::vector<double> sq;
    sq.reserve(level.size());
    for (double v : level) sq.push_back((v - reference) * (v - reference));
    squares.push_back(std::move(sq));
  }
  return estimate_beta_from_squares(squares, eta, epsilon);
}

}  // namespace homog::rates
