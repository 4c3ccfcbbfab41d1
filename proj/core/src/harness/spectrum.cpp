#include "dplr/harness/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "dplr/dyson.hpp"
#include "dplr/error.hpp"

namespace dplr::harness {

std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::TwoBlock: return "two_block";
    case FamilyKind::Linear: return "linear";
    case FamilyKind::Custom: return "custom";
  }
  return "unknown";
}

FamilyKind parse_family(std::string_view name) {
  if (name == "two_block") return FamilyKind::TwoBlock;
  if (name == "linear") return FamilyKind::Linear;
  if (name == "custom") return FamilyKind::Custom;
  fail(ErrorCode::InvalidSpectrum, "unknown spectrum family '" + std::string(name) + "'");
}

std::vector<double> generate_spectrum(const SpectrumFamily& family, std::size_t d, std::size_t k) {
  require(d >= 1, ErrorCode::InvalidSpectrum, "dimension must be positive");
  std::vector<double> out;
  switch (family.kind) {
    case FamilyKind::TwoBlock: {
      require(k >= 1 && k <= d, ErrorCode::InvalidSpectrum, "two_block needs 1 <= k <= d");
      require(family.c >= 1.0, ErrorCode::InvalidSpectrum, "two_block needs gap ratio c >= 1");
      require(family.scale > 0.0, ErrorCode::InvalidSpectrum, "two_block needs scale > 0");
      out.assign(d, family.scale * (1.0 - 1.0 / family.c));
      std::fill(out.begin(), out.begin() + static_cast<long>(k), family.scale);
      break;
    }
    case FamilyKind::Linear: {
      require(family.c >= 0.0, ErrorCode::InvalidSpectrum, "linear needs c >= 0");
      const double root = std::sqrt(static_cast<double>(d));
      out.resize(d);
      for (std::size_t i = 1; i <= d; ++i)
        out[i - 1] = static_cast<double>(d - i) * family.c * root;
      break;
    }
    case FamilyKind::Custom: {
      require(family.values.size() == d, ErrorCode::InvalidSpectrum,
              "custom spectrum length must equal d");
      out = family.values;
      std::sort(out.begin(), out.end(), std::greater<>());
      break;
    }
  }
  for (double x : out)
    require(std::isfinite(x) && x >= 0.0, ErrorCode::InvalidSpectrum,
            "spectrum entries must be finite and non-negative");
  return out;
}

ComplexMatrix random_orthogonal(std::size_t d, RngStream& rng) {
  ComplexMatrix q(d, d);
  for (auto& z : q.data()) z = rng.normal();
  // Twice is enough for full working accuracy.
  orthonormalize_columns(q);
  orthonormalize_columns(q);
  return q;
}

HermitianMatrix matrix_with_spectrum(const ComplexMatrix& basis, const std::vector<double>& spectrum) {
  return compose(basis, spectrum).real_part();
}

}  // namespace dplr::harness
