#include "dplr/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dplr/error.hpp"

namespace dplr {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One two-sided rotation annihilating a(p, q). The unitary acts on columns
// p and q as U = D R with D = diag(1, conj(z)/|z|) and R a real Givens
// rotation chosen as in the real symmetric Jacobi method.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex z = a(p, q);
  const double mag = std::abs(z);
  if (mag == 0.0) return;
  const Complex phase = z / mag;  // exactly +-1 for real input
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * std::conj(phase);
  const Complex uqq = c * std::conj(phase);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

void fix_phases(ComplexMatrix& v) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < v.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > 1e-10) {
        const Complex rot = std::conj(v(i, j)) / mag;
        if (rot != Complex{1.0, 0.0})
          for (std::size_t r = 0; r < n; ++r) v(r, j) *= rot;
        v(i, j) = mag;
        break;
      }
    }
  }
}

void check_rank(std::size_t k, std::size_t d) {
  if (k < 1 || k > d) fail(ErrorCode::InvalidRank, "rank k must satisfy 1 <= k <= d");
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& m, const JacobiSettings& settings) {
  require(all_finite(m.matrix()), ErrorCode::InvalidInput, "matrix has non-finite entries");
  const std::size_t n = m.dim();
  ComplexMatrix a = m.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = settings.relative_tolerance * frobenius_norm(a);

  int sweeps = 0;
  while (sweeps < settings.max_sweeps && off_diagonal_norm(a) > threshold) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  out.sweeps = sweeps;
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  fix_phases(out.vectors);
  return out;
}

std::vector<double> eigvalsh(const HermitianMatrix& m) { return eigh(m).values; }

HermitianMatrix reconstruct(const EigenDecomposition& decomp) {
  return compose(decomp.vectors, decomp.values);
}

SpectrumSlice spectrum_slice(const std::vector<double>& sorted_values, std::size_t k) {
  check_rank(k, sorted_values.size());
  SpectrumSlice slice;
  slice.k = k;
  slice.values.assign(sorted_values.begin(), sorted_values.begin() + static_cast<long>(k));
  if (k == sorted_values.size()) {
    slice.gap = sorted_values.back();
    slice.uses_zero_tail = true;
  } else {
    slice.gap = sorted_values[k - 1] - sorted_values[k];
  }
  return slice;
}

HermitianMatrix rank_k_truncate(const EigenDecomposition& decomp, std::size_t k) {
  check_rank(k, decomp.dim());
  std::vector<double> kept(decomp.values);
  std::fill(kept.begin() + static_cast<long>(k), kept.end(), 0.0);
  return compose(decomp.vectors, kept);
}

HermitianMatrix best_rank_k_approximation(const EigenDecomposition& decomp, std::size_t k) {
  check_rank(k, decomp.dim());
  std::vector<std::size_t> order(decomp.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(decomp.values[x]) > std::abs(decomp.values[y]);
  });
  std::vector<double> kept(decomp.dim(), 0.0);
  for (std::size_t r = 0; r < k; ++r) kept[order[r]] = decomp.values[order[r]];
  return compose(decomp.vectors, kept);
}

HermitianMatrix top_k_projector(const EigenDecomposition& decomp, std::size_t k) {
  check_rank(k, decomp.dim());
  std::vector<double> ones(decomp.dim(), 0.0);
  std::fill(ones.begin(), ones.begin() + static_cast<long>(k), 1.0);
  return compose(decomp.vectors, ones);
}

double spectral_norm(const HermitianMatrix& a) {
  const auto values = eigvalsh(a);
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

double unitarity_defect(const ComplexMatrix& v) {
  return frobenius_distance(v.adjoint() * v, ComplexMatrix::identity(v.cols()));
}

}  // namespace dplr
