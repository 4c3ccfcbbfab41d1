#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dplr {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased
double skewness(std::span<const double> x);
double root_mean_square(std::span<const double> x);
// Linear interpolation between order statistics, q in [0, 1].
double quantile(std::vector<double> x, double q);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)),
// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace dplr
