#include "dplr/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dplr/error.hpp"

namespace dplr {

double semicircle_density(double x) noexcept {
  return std::sqrt(std::max(4.0 - x * x, 0.0)) / (2.0 * std::numbers::pi);
}

double semicircle_upper_mass(double x) noexcept {
  if (x >= 2.0) return 0.0;
  if (x <= -2.0) return 1.0;
  return 0.5 - x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) -
         std::asin(0.5 * x) / std::numbers::pi;
}

double ClassicalSpectrum::max_residual() const {
  const double dd = static_cast<double>(d);
  const double root = std::sqrt(dd);
  double worst = 0.0;
  for (std::size_t i = 1; i <= d; ++i)
    worst = std::max(worst,
                     std::abs(dd * semicircle_upper_mass(omegas[i - 1] / root) -
                              static_cast<double>(i - 1)));
  return worst;
}

ClassicalSpectrum classical_locations(std::size_t d) {
  require(d >= 1, ErrorCode::InvalidInput, "dimension must be positive");
  const double dd = static_cast<double>(d);
  const double root = std::sqrt(dd);
  ClassicalSpectrum out;
  out.d = d;
  out.omegas.resize(d + 1);
  out.omegas.front() = 2.0 * root;
  out.omegas.back() = -2.0 * root;
  for (std::size_t i = 2; i <= d; ++i) {
    const double target = static_cast<double>(i - 1);
    // d * mass(x) is decreasing in x.
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (dd * semicircle_upper_mass(mid) > target)
        lo = mid;
      else
        hi = mid;
    }
    const double x = std::abs(dd * semicircle_upper_mass(lo) - target) <=
                             std::abs(dd * semicircle_upper_mass(hi) - target)
                         ? lo
                         : hi;
    out.omegas[i - 1] = x * root;
  }
  return out;
}

double classical_gap_scale(std::size_t d, std::size_t i) {
  require(i >= 1 && i <= d, ErrorCode::InvalidInput, "gap index out of range");
  const double m = static_cast<double>(std::min(i, d - i + 1));
  return std::pow(static_cast<double>(d), -1.0 / 6.0) * std::pow(m, -1.0 / 3.0);
}

std::vector<std::size_t> classical_gap_violations(const ClassicalSpectrum& spectrum, double tol) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 1; i <= spectrum.d; ++i) {
    const double gap = spectrum.omega(i) - spectrum.omega(i + 1);
    const double s = classical_gap_scale(spectrum.d, i);
    if (gap < s - tol || gap > 2.0 * std::numbers::pi * s + tol) bad.push_back(i);
  }
  return bad;
}

}  // namespace dplr
