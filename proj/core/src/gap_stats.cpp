#include "dplr/gap_stats.hpp"

#include <algorithm>
#include <cmath>

#include "dplr/eigen.hpp"
#include "dplr/error.hpp"
#include "dplr/parallel.hpp"
#include "dplr/stats.hpp"

namespace dplr {

TailSample collect_gap_samples(std::size_t d, NoiseEnsemble ensemble, std::size_t gap_index,
                               std::size_t n_trials, const RngStream& rng) {
  if (d < 2) fail(ErrorCode::NoGaps, "a 1x1 matrix has no eigenvalue gaps");
  require(gap_index >= 1 && gap_index < d, ErrorCode::InvalidInput, "gap index needs 1 <= i < d");
  require(n_trials >= kMinGapTrials, ErrorCode::InvalidInput, "gap sampling needs >= 1000 trials");

  TailSample sample;
  sample.d = d;
  sample.ensemble = ensemble;
  sample.gap_index = gap_index;
  sample.n_trials = n_trials;
  sample.scaled_gaps.resize(n_trials);
  const double root_d = std::sqrt(static_cast<double>(d));
  parallel_for(n_trials, [&](std::size_t t) {
    RngStream trial = rng.split(t);
    const auto eta = eigvalsh(sample_noise(d, ensemble, trial));
    sample.scaled_gaps[t] = (eta[gap_index - 1] - eta[gap_index]) * root_d;
  });
  return sample;
}

TailFit fit_tail_exponent(std::span<const double> samples) {
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  TailFit fit;
  fit.cdf_lo = std::max(10.0 / n, 1e-4);
  fit.cdf_hi = kTailCdfHigh;
  std::vector<double> x, y;
  for (std::size_t r = 0; r < s.size(); ++r) {
    const double cdf = static_cast<double>(r + 1) / n;
    if (cdf < fit.cdf_lo || cdf > fit.cdf_hi || !(s[r] > 0.0)) continue;
    x.push_back(std::log(s[r]));
    y.push_back(std::log(cdf));
  }
  if (x.size() < kMinTailPoints)
    fail(ErrorCode::InsufficientTailData, "fewer than 50 samples inside the tail fit window");
  const LinearFit lf = ordinary_least_squares(x, y);
  fit.exponent = lf.slope;
  fit.standard_error = lf.slope_stderr;
  fit.points = lf.points;
  fit.s_lo = std::exp(x.front());
  fit.s_hi = std::exp(x.back());
  return fit;
}

TailFit fit_tail_exponent(TailSample& sample) {
  sample.fit = fit_tail_exponent(sample.scaled_gaps);
  return sample.fit;
}

}  // namespace dplr
