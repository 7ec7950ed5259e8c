#include "graphaug/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace graphaug {

MeanEstimate estimate_mean(std::span<const double> xs) {
  MeanEstimate e;
  e.n = xs.size();
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.variance = ss / static_cast<double>(e.n - 1);
    e.se = std::sqrt(e.variance / static_cast<double>(e.n));
  }
  return e;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

FiveNumberSummary summarize(std::span<const double> xs) {
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  FiveNumberSummary f;
  f.min = s.front();
  f.q1 = quantile_sorted(s, 0.25);
  f.median = quantile_sorted(s, 0.5);
  f.q3 = quantile_sorted(s, 0.75);
  f.max = s.back();
  f.mean = estimate_mean(xs).mean;
  return f;
}

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit needs >= 2 paired points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

LinearFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0) throw std::invalid_argument("log-log fit needs positive values");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return fit_line(lx, ly);
}

}  // namespace graphaug
