#include "dplr/ensemble.hpp"

#include <cmath>
#include <string>

#include "dplr/error.hpp"

namespace dplr {

int beta(NoiseEnsemble ensemble) noexcept { return ensemble == NoiseEnsemble::GUE ? 2 : 1; }

std::string_view to_string(NoiseEnsemble ensemble) noexcept {
  return ensemble == NoiseEnsemble::GUE ? "gue" : "goe";
}

NoiseEnsemble parse_ensemble(std::string_view name) {
  if (name == "gue" || name == "GUE") return NoiseEnsemble::GUE;
  if (name == "goe" || name == "GOE") return NoiseEnsemble::GOE;
  fail(ErrorCode::InvalidInput, "unknown ensemble '" + std::string(name) + "'");
}

double offdiagonal_power(NoiseEnsemble ensemble) noexcept {
  return ensemble == NoiseEnsemble::GUE ? 4.0 : 2.0;
}

HermitianMatrix sample_noise(std::size_t d, NoiseEnsemble ensemble, RngStream& rng,
                             VarianceConvention convention) {
  require(d >= 1, ErrorCode::InvalidInput, "dimension must be positive");
  ComplexMatrix w(d, d);
  for (auto& z : w.data()) z = rng.normal();
  if (ensemble == NoiseEnsemble::GUE)
    for (auto& z : w.data()) z = Complex(z.real(), rng.normal());

  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    g(i, i) = 2.0 * w(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z = w(i, j) + std::conj(w(j, i));
      g(i, j) = z;
      g(j, i) = std::conj(z);
    }
  }
  if (convention == VarianceConvention::UnitOffDiagonal) g *= 1.0 / std::sqrt(2.0);
  return HermitianMatrix::symmetrized(std::move(g));
}

HermitianMatrix brownian_increment(std::size_t d, double dt, NoiseEnsemble ensemble,
                                   RngStream& rng) {
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidInput, "dt must be positive");
  return sample_noise(d, ensemble, rng).scaled(std::sqrt(dt));
}

}  // namespace dplr
