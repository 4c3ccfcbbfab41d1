#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dplr {

using Complex = std::complex<double>;

// Dense row-major complex matrix. General-purpose workhorse; no structure
// is assumed or enforced.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix real_part() const;
  ComplexMatrix imag_part() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(double scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix lhs, double scale);
ComplexMatrix operator*(double scale, ComplexMatrix rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
// Re tr(A* B).
double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_imag(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

// Square complex matrix with A = A* enforced.
//
// The checked constructor validates Hermiticity of caller-supplied entries to
// an absolute tolerance and then symmetrizes exactly as (A + A*)/2, so the
// stored diagonal is real. `symmetrized` skips the tolerance check and is
// meant for matrices that are Hermitian by construction up to rounding.
class HermitianMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix entries, double tolerance = kSymmetryTolerance);

  static HermitianMatrix symmetrized(ComplexMatrix entries);
  static HermitianMatrix zeros(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return entries_.rows(); }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }

  bool is_real(double tolerance = 0.0) const { return max_abs_imag(entries_) <= tolerance; }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix scaled(double factor) const;
  HermitianMatrix real_part() const;

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix entries, Trusted) : entries_(std::move(entries)) {}

  ComplexMatrix entries_;
};

inline double frobenius_norm(const HermitianMatrix& a) { return frobenius_norm(a.matrix()); }
inline double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return frobenius_distance(a.matrix(), b.matrix());
}

// V diag(values) V*, symmetrized.
HermitianMatrix compose(const ComplexMatrix& vectors, std::span<const double> values);

}  // namespace dplr
