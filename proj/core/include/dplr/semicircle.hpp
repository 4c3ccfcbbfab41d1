#pragma once

#include <cstddef>
#include <vector>

namespace dplr {

// rho(x) = sqrt(max(4 - x^2, 0)) / (2 pi).
double semicircle_density(double x) noexcept;
// int_x^2 rho(t) dt, in closed form.
double semicircle_upper_mass(double x) noexcept;

// Classical eigenvalue locations omega_1 > ... > omega_{d+1}:
// d * int_{omega_i / sqrt(d)}^inf rho = i - 1, with omega_1 = 2 sqrt(d) and
// omega_{d+1} := -2 sqrt(d). `omegas[i - 1]` holds omega_i.
struct ClassicalSpectrum {
  std::size_t d = 0;
  std::vector<double> omegas;

  double omega(std::size_t i) const { return omegas.at(i - 1); }
  // |d * int_{omega_i / sqrt(d)}^inf rho - (i - 1)| over i = 1..d.
  double max_residual() const;
};

ClassicalSpectrum classical_locations(std::size_t d);

// d^{-1/6} min(i, d - i + 1)^{-1/3}; classical gaps omega_i - omega_{i+1}
// lie in [scale, 2 pi scale].
double classical_gap_scale(std::size_t d, std::size_t i);

// Indices i in 1..d whose gap falls outside [scale - tol, 2 pi scale + tol].
std::vector<std::size_t> classical_gap_violations(const ClassicalSpectrum& spectrum,
                                                  double tol = 0.0);

}  // namespace dplr
