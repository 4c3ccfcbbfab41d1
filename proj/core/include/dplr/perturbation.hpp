#pragma once

#include <cstddef>
#include <span>

namespace dplr {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double slack = 0.0) const noexcept {
    return x >= lo - slack && x <= hi + slack;
  }
};

// Weyl: sigma_i(A) + sigma_d(B) <= sigma_i(A + B) <= sigma_i(A) + sigma_1(B).
// `index` is 1-based; both spectra sorted non-increasing.
Interval weyl_interval(std::span<const double> spec_a, std::span<const double> spec_b,
                       std::size_t index);

// Davis-Kahan: ||P_hat - P|| <= ||E|| / delta_sep.
double sin_theta_bound(double perturbation_norm, double delta_sep);

// Separation between the top-k eigenvalues of A and the bottom d-k
// eigenvalues of A_hat: sigma_k(A) - sigma_{k+1}(A_hat). The sin-theta
// hypothesis holds when this is positive.
double sin_theta_separation(std::span<const double> spec_a, std::span<const double> spec_a_hat,
                            std::size_t k);

}  // namespace dplr
