#pragma once

#include <cstddef>
#include <span>

namespace graphaug {

// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.576;

struct MeanEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double se = 0.0;        // standard error of the mean

  double ci_low(double z = kZ99) const { return mean - z * se; }
  double ci_high(double z = kZ99) const { return mean + z * se; }
  bool ci_contains(double value, double z = kZ99) const {
    return ci_low(z) <= value && value <= ci_high(z);
  }
};

// Deterministic two-pass estimate; summation follows the input order.
MeanEstimate estimate_mean(std::span<const double> xs);

struct FiveNumberSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0, mean = 0.0;
};

// Quartiles by linear interpolation between order statistics.
FiveNumberSummary summarize(std::span<const double> xs);
double quantile_sorted(std::span<const double> sorted, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);
// Least squares on (log x, log y).
LinearFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

}  // namespace graphaug
