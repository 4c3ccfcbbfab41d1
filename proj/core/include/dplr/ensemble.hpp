#pragma once

#include <cstddef>
#include <string_view>

#include "dplr/matrix.hpp"
#include "dplr/rng.hpp"

namespace dplr {

enum class NoiseEnsemble { GUE, GOE };

int beta(NoiseEnsemble ensemble) noexcept;
std::string_view to_string(NoiseEnsemble ensemble) noexcept;
NoiseEnsemble parse_ensemble(std::string_view name);

// Entry-variance normalization of the noise matrix.
//   SumWithAdjoint:  G + G* with iid N(0,1) parts. Diagonal variance 4;
//                    off-diagonal real/imag parts variance 2 (GUE), or
//                    off-diagonal variance 2 (GOE).
//   UnitOffDiagonal: (G + G*) / sqrt(2). Only used as a negative control.
enum class VarianceConvention { SumWithAdjoint, UnitOffDiagonal };

// Expected E|B_ij|^2 for i != j per unit time under SumWithAdjoint.
double offdiagonal_power(NoiseEnsemble ensemble) noexcept;

// GUE: (W1 + iW2) + (W1 + iW2)*. GOE: W1 + W1^T. W1 is drawn first (d*d
// normals, row-major), then W2 for GUE, so the GOE draw is a prefix of the
// GUE draw for the same stream.
HermitianMatrix sample_noise(std::size_t d, NoiseEnsemble ensemble, RngStream& rng,
                             VarianceConvention convention = VarianceConvention::SumWithAdjoint);

// sqrt(dt) * sample_noise(d, ensemble, rng).
HermitianMatrix brownian_increment(std::size_t d, double dt, NoiseEnsemble ensemble,
                                   RngStream& rng);

}  // namespace dplr
