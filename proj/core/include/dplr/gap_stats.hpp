#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dplr/ensemble.hpp"
#include "dplr/rng.hpp"

namespace dplr {

struct TailFit {
  double exponent = 0.0;
  double standard_error = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  double cdf_lo = 0.0;
  double cdf_hi = 0.0;
  std::size_t points = 0;
};

// Scaled gaps (eta_i - eta_{i+1}) * sqrt(d) of independent noise matrices.
struct TailSample {
  std::size_t d = 0;
  NoiseEnsemble ensemble = NoiseEnsemble::GUE;
  std::size_t gap_index = 0;  // 1-based i
  std::size_t n_trials = 0;
  std::vector<double> scaled_gaps;
  TailFit fit;
};

inline constexpr std::size_t kMinGapTrials = 1000;
inline constexpr std::size_t kMinTailPoints = 50;
inline constexpr double kTailCdfHigh = 0.1;

// Trial t draws from rng.split(t).
TailSample collect_gap_samples(std::size_t d, NoiseEnsemble ensemble, std::size_t gap_index,
                               std::size_t n_trials, const RngStream& rng);

// OLS of log F_n(s) on log s over order statistics whose empirical CDF lies
// in [max(10 / n, 1e-4), 0.1].
TailFit fit_tail_exponent(std::span<const double> samples);
TailFit fit_tail_exponent(TailSample& sample);

}  // namespace dplr
