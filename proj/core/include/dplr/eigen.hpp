#pragma once

#include <cstddef>
#include <vector>

#include "dplr/matrix.hpp"

namespace dplr {

// Spectral decomposition M = V diag(values) V*.
//
// `values` is sorted non-increasing; column j of `vectors` is the unit
// eigenvector for values[j]. Phases are fixed so that the first component of
// each column with modulus above 1e-10 is real and positive.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
  int sweeps = 0;

  std::size_t dim() const noexcept { return values.size(); }
};

// Top-k eigenvalues and the k'th gap. For k == d the gap is values[d-1]
// (the sigma_{d+1} := 0 convention) and `uses_zero_tail` is set.
struct SpectrumSlice {
  std::size_t k = 0;
  std::vector<double> values;
  double gap = 0.0;
  bool uses_zero_tail = false;

  // The rank-k subspace is uniquely determined only when the gap is positive.
  bool unique() const noexcept { return gap > 0.0; }
};

struct JacobiSettings {
  double relative_tolerance = 1e-13;
  int max_sweeps = 100;
};

// Cyclic complex Jacobi. Deterministic: fixed row-major pivot order, ties in
// eigenvalues keep the original column order.
EigenDecomposition eigh(const HermitianMatrix& m, const JacobiSettings& settings = {});
std::vector<double> eigvalsh(const HermitianMatrix& m);

HermitianMatrix reconstruct(const EigenDecomposition& decomp);

SpectrumSlice spectrum_slice(const std::vector<double>& sorted_values, std::size_t k);

// V diag(sigma_1..sigma_k, 0..0) V*.
HermitianMatrix rank_k_truncate(const EigenDecomposition& decomp, std::size_t k);

// Keeps the k eigenpairs of largest |value|: the Frobenius-optimal rank-k
// approximation of an indefinite Hermitian matrix.
HermitianMatrix best_rank_k_approximation(const EigenDecomposition& decomp, std::size_t k);

// V_k V_k*.
HermitianMatrix top_k_projector(const EigenDecomposition& decomp, std::size_t k);

double spectral_norm(const HermitianMatrix& a);
double unitarity_defect(const ComplexMatrix& v);  // ||V* V - I||_F

}  // namespace dplr
