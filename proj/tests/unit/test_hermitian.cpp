#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dplr/eigen.hpp"
#include "dplr/matrix_io.hpp"
#include "dplr/perturbation.hpp"
#include "test_util.hpp"

namespace dplr {
namespace {

using testing::gaussian_complex;
using testing::random_hermitian;
using testing::random_psd;

// Closed form for a 2x2 Hermitian [[a, b], [conj b, c]].
std::pair<double, double> eig2(double a, Complex b, double c) {
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  return {mid + rad, mid - rad};
}

HermitianMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n = rows.size();
  ComplexMatrix m(n, n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const auto& z : r) m(i, j++) = z;
    ++i;
  }
  return HermitianMatrix(std::move(m));
}

TEST(HermitianMatrix, RejectsNonHermitianInput) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0 + 1e-9;
  EXPECT_DPLR_ERROR(HermitianMatrix(m), ErrorCode::InvalidInput);
  m(1, 0) = 1.0 + 1e-13;
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), h(1, 0));
}

TEST(HermitianMatrix, SymmetrizesDiagonalToReal) {
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(1.0, 1e-13);
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 0).imag(), 0.0);
}

TEST(HermitianMatrix, RejectsNonFinite) {
  ComplexMatrix m(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_DPLR_ERROR(HermitianMatrix(m), ErrorCode::InvalidInput);
}

TEST(Eigh, IdentityHasUnitSpectrum) {
  const auto e = eigh(HermitianMatrix::identity(3));
  for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_LE(unitarity_defect(e.vectors), 1e-12);
}

TEST(Eigh, RealTwoByTwo) {
  const auto [hi, lo] = eig2(2.0, 1.0, 2.0);
  ASSERT_DOUBLE_EQ(hi, 3.0);
  ASSERT_DOUBLE_EQ(lo, 1.0);
  const auto e = eigh(from_rows({{2.0, 1.0}, {1.0, 2.0}}));
  EXPECT_NEAR(e.values[0], 3.0, 1e-12);
  EXPECT_NEAR(e.values[1], 1.0, 1e-12);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(e.vectors(0, 0) - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e.vectors(1, 0) - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e.vectors(0, 1) - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e.vectors(1, 1) + r), 0.0, 1e-12);
}

TEST(Eigh, ImaginaryOffDiagonal) {
  const Complex i(0.0, 1.0);
  const auto [hi, lo] = eig2(0.0, i, 0.0);
  ASSERT_DOUBLE_EQ(hi, 1.0);
  ASSERT_DOUBLE_EQ(lo, -1.0);
  const auto e = eigh(from_rows({{0.0, i}, {-i, 0.0}}));
  EXPECT_NEAR(e.values[0], 1.0, 1e-12);
  EXPECT_NEAR(e.values[1], -1.0, 1e-12);
}

TEST(Eigh, MatchesClosedFormOnRandomTwoByTwo) {
  RngStream rng(11, 0);
  for (int t = 0; t < 200; ++t) {
    const double a = rng.normal(), c = rng.normal();
    const Complex b(rng.normal(), rng.normal());
    const auto [hi, lo] = eig2(a, b, c);
    const auto e = eigh(from_rows({{a, b}, {std::conj(b), c}}));
    EXPECT_NEAR(e.values[0], hi, 1e-12);
    EXPECT_NEAR(e.values[1], lo, 1e-12);
  }
}

TEST(Eigh, PhaseConvention) {
  RngStream rng(12, 0);
  const auto e = eigh(random_hermitian(6, rng));
  for (std::size_t j = 0; j < 6; ++j) {
    std::size_t i = 0;
    while (std::abs(e.vectors(i, j)) <= 1e-10) ++i;
    EXPECT_EQ(e.vectors(i, j).imag(), 0.0);
    EXPECT_GT(e.vectors(i, j).real(), 0.0);
  }
}

TEST(Eigh, ContractOnRandomMatrices) {
  RngStream rng(13, 0);
  for (std::size_t d = 1; d <= 24; ++d) {
    const HermitianMatrix m = random_hermitian(d, rng, 3.0);
    const auto e = eigh(m);
    for (std::size_t i = 0; i + 1 < d; ++i) EXPECT_GE(e.values[i], e.values[i + 1]);
    EXPECT_LE(unitarity_defect(e.vectors), 1e-9);
    EXPECT_LE(frobenius_distance(m, reconstruct(e)), 1e-9 * std::max(1.0, frobenius_norm(m)));
  }
}

TEST(Eigh, BitwiseDeterministic) {
  RngStream rng(14, 0);
  const HermitianMatrix m = random_hermitian(9, rng);
  const auto a = eigh(m), b = eigh(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_TRUE(a.vectors == b.vectors);
}

TEST(Eigh, VectorsAreEigenvectors) {
  RngStream rng(15, 0);
  const HermitianMatrix m = random_hermitian(7, rng);
  const auto e = eigh(m);
  const ComplexMatrix mv = m.matrix() * e.vectors;
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t i = 0; i < 7; ++i)
      EXPECT_NEAR(std::abs(mv(i, j) - e.values[j] * e.vectors(i, j)), 0.0, 1e-10);
}

TEST(Truncation, DiagonalCase) {
  const std::vector<double> v{3.0, 2.0, 1.0};
  const auto t = rank_k_truncate(eigh(HermitianMatrix::diagonal(v)), 2);
  const std::vector<double> expected{3.0, 2.0, 0.0};
  EXPECT_LE(frobenius_distance(t, HermitianMatrix::diagonal(expected)), 1e-12);
}

TEST(Truncation, TwoByTwoRankOne) {
  const auto t = rank_k_truncate(eigh(from_rows({{2.0, 1.0}, {1.0, 2.0}})), 1);
  EXPECT_LE(frobenius_distance(t, from_rows({{1.5, 1.5}, {1.5, 1.5}})), 1e-12);
}

TEST(Truncation, FullRankReproducesInput) {
  RngStream rng(16, 0);
  const HermitianMatrix m = random_hermitian(5, rng);
  EXPECT_LE(frobenius_distance(rank_k_truncate(eigh(m), 5), m), 1e-9 * frobenius_norm(m));
}

TEST(Truncation, RankOutOfRange) {
  const auto e = eigh(HermitianMatrix::identity(3));
  EXPECT_DPLR_ERROR(rank_k_truncate(e, 0), ErrorCode::InvalidRank);
  EXPECT_DPLR_ERROR(rank_k_truncate(e, 4), ErrorCode::InvalidRank);
  EXPECT_DPLR_ERROR(top_k_projector(e, 4), ErrorCode::InvalidRank);
}

TEST(Truncation, EckartYoungAgainstRandomCandidates) {
  RngStream rng(17, 0);
  for (int m = 0; m < 20; ++m) {
    const std::size_t d = 2 + rng.next_u64() % 5;
    const std::size_t k = 1 + rng.next_u64() % (d - 1);
    const HermitianMatrix a = random_psd(d, rng);
    const double best = frobenius_distance(a, rank_k_truncate(eigh(a), k));
    for (int c = 0; c < 200; ++c) {
      const ComplexMatrix b = gaussian_complex(d, k, rng);
      const HermitianMatrix z = HermitianMatrix::symmetrized(b * b.adjoint());
      EXPECT_LE(best, frobenius_distance(a, z) + 1e-9);
    }
  }
}

TEST(Truncation, BestRankKForIndefinite) {
  const std::vector<double> v{3.0, 0.5, -5.0};
  const auto t = best_rank_k_approximation(eigh(HermitianMatrix::diagonal(v)), 1);
  const std::vector<double> expected{0.0, 0.0, -5.0};
  EXPECT_LE(frobenius_distance(t, HermitianMatrix::diagonal(expected)), 1e-12);
}

TEST(Projector, Examples) {
  const std::vector<double> a{3.0, 1.0};
  const std::vector<double> pa{1.0, 0.0};
  EXPECT_LE(frobenius_distance(top_k_projector(eigh(HermitianMatrix::diagonal(a)), 1),
                               HermitianMatrix::diagonal(pa)),
            1e-12);
  const std::vector<double> b{5.0, 5.0, 1.0};
  const std::vector<double> pb{1.0, 1.0, 0.0};
  EXPECT_LE(frobenius_distance(top_k_projector(eigh(HermitianMatrix::diagonal(b)), 2),
                               HermitianMatrix::diagonal(pb)),
            1e-12);
  RngStream rng(18, 0);
  EXPECT_LE(frobenius_distance(top_k_projector(eigh(random_hermitian(4, rng)), 4),
                               HermitianMatrix::identity(4)),
            1e-9);
}

TEST(Projector, Laws) {
  RngStream rng(19, 0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + rng.next_u64() % 8;
    const std::size_t k = 1 + rng.next_u64() % d;
    const HermitianMatrix p = top_k_projector(eigh(random_hermitian(d, rng)), k);
    const ComplexMatrix p2 = p.matrix() * p.matrix();
    EXPECT_LE(frobenius_distance(p2, p.matrix()), 1e-9);
    EXPECT_NEAR(p.matrix().trace().real(), static_cast<double>(k), 1e-9);
  }
}

TEST(SpectrumSlice, GapAndZeroTail) {
  const auto s = spectrum_slice({5.0, 3.0, 1.0}, 1);
  EXPECT_DOUBLE_EQ(s.gap, 2.0);
  EXPECT_FALSE(s.uses_zero_tail);
  const auto full = spectrum_slice({5.0, 3.0, 1.0}, 3);
  EXPECT_DOUBLE_EQ(full.gap, 1.0);
  EXPECT_TRUE(full.uses_zero_tail);
  EXPECT_FALSE(spectrum_slice({2.0, 2.0, 1.0}, 1).unique());
}

TEST(Norms, Examples) {
  EXPECT_DOUBLE_EQ(frobenius_norm(HermitianMatrix::identity(4)), 2.0);
  const std::vector<double> v{3.0, -5.0};
  EXPECT_NEAR(spectral_norm(HermitianMatrix::diagonal(v)), 5.0, 1e-12);
  RngStream rng(20, 0);
  const HermitianMatrix a = random_hermitian(3, rng);
  EXPECT_EQ(frobenius_distance(a, a), 0.0);
  EXPECT_DPLR_ERROR(frobenius_distance(HermitianMatrix::identity(2), HermitianMatrix::identity(3)),
                    ErrorCode::InvalidInput);
}

TEST(Weyl, Examples) {
  const std::vector<double> a{3.0, 1.0}, b{1.0, -1.0};
  const Interval i1 = weyl_interval(a, b, 1);
  EXPECT_DOUBLE_EQ(i1.lo, 2.0);
  EXPECT_DOUBLE_EQ(i1.hi, 4.0);
  const std::vector<double> zero{0.0, 0.0}, c{2.0, -2.0};
  const Interval i2 = weyl_interval(zero, c, 2);
  EXPECT_DOUBLE_EQ(i2.lo, -2.0);
  EXPECT_DOUBLE_EQ(i2.hi, 2.0);
  const Interval i3 = weyl_interval(a, zero, 2);
  EXPECT_DOUBLE_EQ(i3.lo, 1.0);
  EXPECT_DOUBLE_EQ(i3.hi, 1.0);
  EXPECT_DPLR_ERROR(weyl_interval(a, b, 3), ErrorCode::InvalidInput);
  EXPECT_DPLR_ERROR(weyl_interval(a, b, 0), ErrorCode::InvalidInput);
}

TEST(Weyl, ContainmentOnRandomPairs) {
  RngStream rng(21, 0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng.next_u64() % 8;
    const HermitianMatrix a = random_hermitian(d, rng), b = random_hermitian(d, rng);
    const auto sa = eigvalsh(a), sb = eigvalsh(b), sab = eigvalsh(a + b);
    for (std::size_t i = 1; i <= d; ++i) EXPECT_TRUE(weyl_interval(sa, sb, i).contains(sab[i - 1], 1e-9));
  }
}

TEST(SinTheta, Examples) {
  EXPECT_EQ(sin_theta_bound(0.0, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(sin_theta_bound(3.0, 2.0), 1.5);
  EXPECT_DOUBLE_EQ(sin_theta_bound(std::sqrt(16.0), 8.0), 0.5);
  EXPECT_DPLR_ERROR(sin_theta_bound(1.0, 0.0), ErrorCode::DegenerateGap);
  EXPECT_DPLR_ERROR(sin_theta_bound(1.0, -1.0), ErrorCode::DegenerateGap);
}

TEST(SinTheta, EmpiricalBoundHolds) {
  RngStream rng(22, 0);
  int tested = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 3 + rng.next_u64() % 6;
    const std::size_t k = 1 + rng.next_u64() % (d - 1);
    const HermitianMatrix a = random_hermitian(d, rng, 2.0);
    const HermitianMatrix e = random_hermitian(d, rng, 0.1);
    const auto da = eigh(a), dh = eigh(a + e);
    const double sep = sin_theta_separation(da.values, dh.values, k);
    if (sep <= 0.0) continue;
    ++tested;
    const double lhs = spectral_norm(top_k_projector(dh, k) - top_k_projector(da, k));
    EXPECT_LE(lhs, sin_theta_bound(spectral_norm(e), sep) + 1e-9);
  }
  EXPECT_GT(tested, 100);
}

class MatrixIo : public ::testing::Test {
 protected:
  std::filesystem::path dir = std::filesystem::path(DPLR_TEST_TMPDIR) / "io";
  void SetUp() override { std::filesystem::create_directories(dir); }
};

TEST_F(MatrixIo, ComplexRoundTripIsExact) {
  RngStream rng(23, 0);
  const HermitianMatrix m = random_hermitian(5, rng);
  write_matrix(dir / "c", m.matrix(), {"note"});
  EXPECT_TRUE(std::filesystem::exists(dir / "c_im.csv"));
  EXPECT_TRUE(read_hermitian(dir / "c") == m);
  EXPECT_TRUE(read_hermitian(dir / "c_re.csv") == m);
}

TEST_F(MatrixIo, RealMatrixOmitsImaginaryFile) {
  const std::vector<double> v{0.1, 1.0 / 3.0};
  std::filesystem::remove(dir / "r_im.csv");
  write_matrix(dir / "r", HermitianMatrix::diagonal(v).matrix());
  EXPECT_FALSE(std::filesystem::exists(dir / "r_im.csv"));
  EXPECT_TRUE(read_hermitian(dir / "r") == HermitianMatrix::diagonal(v));
}

TEST_F(MatrixIo, RejectsRaggedAndNonHermitian) {
  {
    std::ofstream f(dir / "ragged_re.csv");
    f << "1,2\n3\n";
  }
  EXPECT_DPLR_ERROR(read_matrix(dir / "ragged"), ErrorCode::InvalidInput);
  {
    std::ofstream f(dir / "asym_re.csv");
    f << "1,2\n3,4\n";
  }
  EXPECT_DPLR_ERROR(read_hermitian(dir / "asym"), ErrorCode::InvalidInput);
  EXPECT_DPLR_ERROR(read_matrix(dir / "missing"), ErrorCode::InvalidInput);
}

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(x)), x);
}

}  // namespace
}  // namespace dplr
