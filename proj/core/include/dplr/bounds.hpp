#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dplr {

// (log d)^{L log log d}, or 1 for d <= 3 where log log d <= 0.
struct PolylogFactor {
  std::size_t d = 1;
  double L = 1.0;
  double value = 1.0;

  static PolylogFactor make(std::size_t d, double L = 1.0);
  static PolylogFactor unit() { return {}; }
};

enum class BoundMode { Leading, Explicit };

// Leading:  constant * sqrt(k d) * sigma_k / (sigma_k - sigma_{k+1}) * sqrt(T) * polylog.
// Explicit: sqrt(1e6 b^2 k d T (sigma_k / gap)^2 log^3 d log(sigma_1 + T)) with b = polylog.
// d is spectrum.size(); k == d uses sigma_{d+1} := 0.
double covariance_utility_bound(std::span<const double> spectrum, std::size_t k, double T,
                                const PolylogFactor& polylog, double constant = 1.0,
                                BoundMode mode = BoundMode::Leading);

// sqrt(sum_{i <= k < j} 1 / (sigma_i - sigma_j)^2) * sqrt(T).
double subspace_utility_bound(std::span<const double> spectrum, std::size_t k, double T);

// sqrt(k) sqrt(d) / (sigma_k - sigma_{k+1}) * sqrt(T): the deterministic
// Davis-Kahan based comparison.
double davis_kahan_subspace_bound(std::span<const double> spectrum, std::size_t k, double T);

// s^{beta + 1} + d^{-1000}. The second term underflows to 0 for d >= 2.
double gap_bound_rhs(double s, int beta, std::size_t d);
// s / (b sqrt(d)).
double gap_threshold(double s, std::size_t d, const PolylogFactor& polylog);

// min(1, 2 sqrt(pi) exp(-C alpha^2)); C = 1/2 gives the explicit constant.
double spectral_sup_tail(double alpha, double C = 0.5);
// sqrt(T) (sqrt(d) + alpha).
double spectral_sup_threshold(double T, std::size_t d, double alpha);

// P(||W||_2 > 2 sqrt(d) + s) < 2 exp(-s^2) for real iid N(0, 1) W.
double gaussian_norm_threshold(std::size_t d, double s);
double gaussian_norm_tail(double s);

// constant * sqrt(k d T) * polylog; no gap dependence.
double weaker_metric_bound(std::size_t k, std::size_t d, double T, const PolylogFactor& polylog,
                           double constant = 1.0);

// Entry j is polylog(d, L) * min(j, d - j + 1)^{-1/3} * d^{-1/6}.
std::vector<double> rigidity_envelope(std::size_t d, double L = 1.0);

}  // namespace dplr
