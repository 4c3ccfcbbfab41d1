#include "dplr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dplr/error.hpp"

namespace dplr {

PolylogFactor PolylogFactor::make(std::size_t d, double L) {
  require(d >= 1, ErrorCode::InvalidInput, "dimension must be positive");
  PolylogFactor p{d, L, 1.0};
  if (d > 3) {
    const double log_d = std::log(static_cast<double>(d));
    p.value = std::max(1.0, std::pow(log_d, L * std::log(log_d)));
  }
  return p;
}

namespace {

void check_spectrum(std::span<const double> spectrum, std::size_t k) {
  require(!spectrum.empty(), ErrorCode::InvalidInput, "empty spectrum");
  if (k < 1 || k > spectrum.size()) fail(ErrorCode::InvalidRank, "rank k must satisfy 1 <= k <= d");
  for (std::size_t i = 0; i + 1 < spectrum.size(); ++i)
    require(spectrum[i] >= spectrum[i + 1], ErrorCode::InvalidSpectrum,
            "spectrum must be sorted non-increasing");
}

double kth_gap(std::span<const double> spectrum, std::size_t k) {
  return k == spectrum.size() ? spectrum.back() : spectrum[k - 1] - spectrum[k];
}

}  // namespace

double covariance_utility_bound(std::span<const double> spectrum, std::size_t k, double T,
                                const PolylogFactor& polylog, double constant, BoundMode mode) {
  check_spectrum(spectrum, k);
  require(T >= 0.0, ErrorCode::InvalidInput, "T must be non-negative");
  const double gap = kth_gap(spectrum, k);
  if (!(gap > 0.0)) fail(ErrorCode::DegenerateGap, "sigma_k - sigma_{k+1} must be positive");
  const double d = static_cast<double>(spectrum.size());
  const double kk = static_cast<double>(k);
  const double ratio = spectrum[k - 1] / gap;
  if (mode == BoundMode::Leading)
    return constant * std::sqrt(kk * d) * ratio * std::sqrt(T) * polylog.value;
  const double log_d = std::log(d);
  const double log_scale = std::log(spectrum.front() + T);
  require(log_scale > 0.0 && d > 1.0, ErrorCode::InvalidInput,
          "explicit bound needs d > 1 and sigma_1 + T > 1");
  const double b = polylog.value;
  return std::sqrt(1e6 * b * b * kk * d * T * ratio * ratio * log_d * log_d * log_d * log_scale);
}

double subspace_utility_bound(std::span<const double> spectrum, std::size_t k, double T) {
  check_spectrum(spectrum, k);
  if (k == spectrum.size()) fail(ErrorCode::InvalidRank, "subspace bound needs k < d");
  require(T >= 0.0, ErrorCode::InvalidInput, "T must be non-negative");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = k; j < spectrum.size(); ++j) {
      const double gap = spectrum[i] - spectrum[j];
      if (!(gap > 0.0)) fail(ErrorCode::DegenerateGap, "eigenvalues coincide across the cut");
      sum += 1.0 / (gap * gap);
    }
  return std::sqrt(sum) * std::sqrt(T);
}

double davis_kahan_subspace_bound(std::span<const double> spectrum, std::size_t k, double T) {
  check_spectrum(spectrum, k);
  if (k == spectrum.size()) fail(ErrorCode::InvalidRank, "subspace bound needs k < d");
  const double gap = kth_gap(spectrum, k);
  if (!(gap > 0.0)) fail(ErrorCode::DegenerateGap, "sigma_k - sigma_{k+1} must be positive");
  return std::sqrt(static_cast<double>(k) * static_cast<double>(spectrum.size())) / gap *
         std::sqrt(T);
}

double gap_bound_rhs(double s, int beta, std::size_t d) {
  require(s > 0.0, ErrorCode::InvalidInput, "s must be positive");
  require(beta == 1 || beta == 2, ErrorCode::InvalidInput, "beta must be 1 or 2");
  return std::pow(s, beta + 1) + std::pow(static_cast<double>(d), -1000.0);
}

double gap_threshold(double s, std::size_t d, const PolylogFactor& polylog) {
  require(s > 0.0, ErrorCode::InvalidInput, "s must be positive");
  return s / (polylog.value * std::sqrt(static_cast<double>(d)));
}

double spectral_sup_tail(double alpha, double C) {
  require(alpha > 0.0, ErrorCode::InvalidInput, "alpha must be positive");
  return std::min(1.0, 2.0 * std::sqrt(std::numbers::pi) * std::exp(-C * alpha * alpha));
}

double spectral_sup_threshold(double T, std::size_t d, double alpha) {
  require(T >= 0.0, ErrorCode::InvalidInput, "T must be non-negative");
  return std::sqrt(T) * (std::sqrt(static_cast<double>(d)) + alpha);
}

double gaussian_norm_threshold(std::size_t d, double s) {
  return 2.0 * std::sqrt(static_cast<double>(d)) + s;
}

double gaussian_norm_tail(double s) {
  require(s > 0.0, ErrorCode::InvalidInput, "s must be positive");
  return std::min(1.0, 2.0 * std::exp(-s * s));
}

double weaker_metric_bound(std::size_t k, std::size_t d, double T, const PolylogFactor& polylog,
                           double constant) {
  require(k >= 1 && d >= 1 && T >= 0.0, ErrorCode::InvalidInput,
          "weaker metric bound needs k, d >= 1 and T >= 0");
  return constant * std::sqrt(static_cast<double>(k) * static_cast<double>(d) * T) *
         polylog.value;
}

std::vector<double> rigidity_envelope(std::size_t d, double L) {
  require(d >= 4, ErrorCode::InvalidInput, "rigidity envelope needs d >= 4");
  const double b = PolylogFactor::make(d, L).value;
  const double scale = std::pow(static_cast<double>(d), -1.0 / 6.0);
  std::vector<double> env(d);
  for (std::size_t j = 1; j <= d; ++j) {
    const double m = static_cast<double>(std::min(j, d - j + 1));
    env[j - 1] = b * std::pow(m, -1.0 / 3.0) * scale;
  }
  return env;
}

}  // namespace dplr
