#include "dplr/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "dplr/error.hpp"

namespace dplr {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix out(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::real_part() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t n = 0; n < data_.size(); ++n) out.data_[n] = data_[n].real();
  return out;
}

ComplexMatrix ComplexMatrix::imag_part() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t n = 0; n < data_.size(); ++n) out.data_[n] = data_[n].imag();
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::InvalidInput,
          "matrix dimension mismatch");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::InvalidInput,
          "matrix dimension mismatch");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, double scale) { return lhs *= scale; }
ComplexMatrix operator*(double scale, ComplexMatrix rhs) { return rhs *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require(lhs.cols() == rhs.rows(), ErrorCode::InvalidInput, "matrix dimension mismatch");
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t l = 0; l < lhs.cols(); ++l) {
      const Complex a = lhs(i, l);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(l, j);
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::InvalidInput,
          "matrix dimension mismatch");
  double sum = 0.0;
  for (std::size_t n = 0; n < a.data().size(); ++n) sum += std::norm(a.data()[n] - b.data()[n]);
  return std::sqrt(sum);
}

double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::InvalidInput,
          "matrix dimension mismatch");
  double sum = 0.0;
  for (std::size_t n = 0; n < a.data().size(); ++n)
    sum += (std::conj(a.data()[n]) * b.data()[n]).real();
  return sum;
}

double max_abs_imag(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.data()) m = std::max(m, std::abs(z.imag()));
  return m;
}

bool all_finite(const ComplexMatrix& a) {
  for (const auto& z : a.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {

ComplexMatrix symmetrize(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

void validate_square_finite(const ComplexMatrix& a) {
  require(a.is_square() && a.rows() > 0, ErrorCode::InvalidInput,
          "Hermitian matrix must be square and non-empty");
  require(all_finite(a), ErrorCode::InvalidInput, "matrix has non-finite entries");
}

}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix entries, double tolerance) {
  validate_square_finite(entries);
  const std::size_t n = entries.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(entries(i, j) - std::conj(entries(j, i))) > tolerance)
        fail(ErrorCode::InvalidInput, "matrix is not Hermitian within tolerance");
  entries_ = symmetrize(entries);
}

HermitianMatrix HermitianMatrix::symmetrized(ComplexMatrix entries) {
  validate_square_finite(entries);
  return HermitianMatrix(symmetrize(entries), Trusted{});
}

HermitianMatrix HermitianMatrix::zeros(std::size_t dim) {
  require(dim > 0, ErrorCode::InvalidInput, "dimension must be positive");
  return HermitianMatrix(ComplexMatrix(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  require(dim > 0, ErrorCode::InvalidInput, "dimension must be positive");
  return HermitianMatrix(ComplexMatrix::identity(dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix d = ComplexMatrix::diagonal(values);
  validate_square_finite(d);
  return HermitianMatrix(std::move(d), Trusted{});
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  return HermitianMatrix(entries_ + other.entries_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  return HermitianMatrix(entries_ - other.entries_, Trusted{});
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  return HermitianMatrix(entries_ * factor, Trusted{});
}

HermitianMatrix HermitianMatrix::real_part() const {
  return HermitianMatrix(entries_.real_part(), Trusted{});
}

HermitianMatrix compose(const ComplexMatrix& vectors, std::span<const double> values) {
  const std::size_t n = vectors.rows();
  require(vectors.cols() == values.size(), ErrorCode::InvalidInput,
          "eigenvector/eigenvalue count mismatch");
  ComplexMatrix out(n, n);
  for (std::size_t l = 0; l < values.size(); ++l) {
    const double s = values[l];
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = s * vectors(i, l);
      for (std::size_t j = i; j < n; ++j) out(i, j) += vi * std::conj(vectors(j, l));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(j, i) = std::conj(out(i, j));
  return HermitianMatrix::symmetrized(std::move(out));
}

}  // namespace dplr
