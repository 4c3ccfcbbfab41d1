#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dplr/matrix.hpp"
#include "dplr/rng.hpp"

namespace dplr::harness {

enum class FamilyKind { TwoBlock, Linear, Custom };

std::string_view to_string(FamilyKind kind) noexcept;
FamilyKind parse_family(std::string_view name);

// two_block: sigma_1..k = scale, sigma_{k+1..d} = scale (1 - 1/c), so the
//            gap ratio sigma_k / (sigma_k - sigma_{k+1}) equals c.
// linear:    sigma_i = (d - i) c sqrt(d).
// custom:    `values`, sorted and validated.
struct SpectrumFamily {
  FamilyKind kind = FamilyKind::TwoBlock;
  double c = 2.0;
  double scale = 1.0;
  std::vector<double> values;
};

std::vector<double> generate_spectrum(const SpectrumFamily& family, std::size_t d, std::size_t k);

// Q factor of a Gaussian matrix with positive R diagonal (Haar distributed).
ComplexMatrix random_orthogonal(std::size_t d, RngStream& rng);

// V diag(spectrum) V^T.
HermitianMatrix matrix_with_spectrum(const ComplexMatrix& basis, const std::vector<double>& spectrum);

}  // namespace dplr::harness
