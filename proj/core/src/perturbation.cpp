#include "dplr/perturbation.hpp"

#include "dplr/error.hpp"

namespace dplr {

Interval weyl_interval(std::span<const double> spec_a, std::span<const double> spec_b,
                       std::size_t index) {
  require(spec_a.size() == spec_b.size() && !spec_a.empty(), ErrorCode::InvalidInput,
          "spectra must be non-empty and of equal length");
  require(index >= 1 && index <= spec_a.size(), ErrorCode::InvalidInput,
          "Weyl index out of range");
  const double base = spec_a[index - 1];
  return {base + spec_b.back(), base + spec_b.front()};
}

double sin_theta_bound(double perturbation_norm, double delta_sep) {
  require(delta_sep > 0.0, ErrorCode::DegenerateGap, "separation must be positive");
  require(perturbation_norm >= 0.0, ErrorCode::InvalidInput,
          "perturbation norm must be non-negative");
  return perturbation_norm / delta_sep;
}

double sin_theta_separation(std::span<const double> spec_a, std::span<const double> spec_a_hat,
                            std::size_t k) {
  require(spec_a.size() == spec_a_hat.size(), ErrorCode::InvalidInput,
          "spectra must be of equal length");
  if (k < 1 || k >= spec_a.size()) fail(ErrorCode::InvalidRank, "need 1 <= k < d");
  return spec_a[k - 1] - spec_a_hat[k];
}

}  // namespace dplr
