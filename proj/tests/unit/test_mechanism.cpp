#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dplr/eigen.hpp"
#include "dplr/mechanism.hpp"
#include "dplr/stats.hpp"
#include "test_util.hpp"

namespace dplr {
namespace {

using testing::random_real_psd;

std::size_t numerical_rank(const HermitianMatrix& m, double tol = 1e-8) {
  const auto v = eigvalsh(m);
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](double x) { return std::abs(x) > tol; }));
}

TEST(PrivacyTime, ReferenceBudget) {
  const double oracle = 2.0 * std::log(1.25 / 0.05);
  ASSERT_NEAR(oracle, 6.437751649736401, 1e-15);
  EXPECT_NEAR(privacy_time(1.0, 0.05).T, 6.437751649736401, 1e-9);
}

TEST(PrivacyTime, UnitNoiseTime) {
  EXPECT_NEAR(privacy_time(std::numbers::sqrt2, 1.25 / std::numbers::e).T, 1.0, 1e-12);
}

TEST(PrivacyTime, EpsilonScaling) {
  const double t1 = privacy_time(0.7, 1e-5).T, t2 = privacy_time(1.4, 1e-5).T;
  EXPECT_NEAR(t2, t1 / 4.0, 1e-12 * t1);
}

TEST(PrivacyTime, RejectsInvalidBudget) {
  EXPECT_DPLR_ERROR(privacy_time(0.0, 0.1), ErrorCode::InvalidPrivacyBudget);
  EXPECT_DPLR_ERROR(privacy_time(-1.0, 0.1), ErrorCode::InvalidPrivacyBudget);
  EXPECT_DPLR_ERROR(privacy_time(1.0, 0.0), ErrorCode::InvalidPrivacyBudget);
  EXPECT_DPLR_ERROR(privacy_time(1.0, 1.0), ErrorCode::InvalidPrivacyBudget);
  EXPECT_DPLR_ERROR(privacy_time(INFINITY, 0.1), ErrorCode::InvalidPrivacyBudget);
}

TEST(PrivacyTime, NonPrivateHook) {
  const PrivacyParams p = PrivacyParams::from_noise_time(0.0);
  EXPECT_FALSE(p.is_private);
  EXPECT_EQ(p.T, 0.0);
  EXPECT_DPLR_ERROR(PrivacyParams::from_noise_time(-1.0), ErrorCode::InvalidInput);
}

TEST(GapAssumption, Examples) {
  const std::vector<double> s{100.0, 0.0};
  ASSERT_GT(100.0, 4.0 * std::sqrt(2.0));
  EXPECT_TRUE(check_gap_assumption(s, 1, 1.0));
  const std::vector<double> flat{3.0, 3.0, 1.0};
  EXPECT_FALSE(check_gap_assumption(flat, 1, 1e-12));
  // 4 sqrt(T d) = 8 exactly for T = 1, d = 4.
  const std::vector<double> edge{9.0, 1.0, 0.0, 0.0};
  EXPECT_TRUE(check_gap_assumption(edge, 1, 1.0));
  const std::vector<double> below{8.999999, 1.0, 0.0, 0.0};
  EXPECT_FALSE(check_gap_assumption(below, 1, 1.0));
  EXPECT_DPLR_ERROR(check_gap_assumption(s, 2, 1.0), ErrorCode::InvalidRank);
}

TEST(ComplexMechanism, NoiselessReturnsTruncation) {
  RngStream rng(1, 0);
  const HermitianMatrix m = random_real_psd(6, rng);
  const auto r = complex_gaussian_mechanism(m, 2, PrivacyParams::from_noise_time(0.0), rng);
  EXPECT_LE(frobenius_distance(r.Y, rank_k_truncate(eigh(m), 2)), 1e-9);
  EXPECT_LE(r.metrics.strong_frob, 1e-9);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(ComplexMechanism, SmallGapExample) {
  const std::vector<double> v{10.0, 0.0};
  const HermitianMatrix m = HermitianMatrix::diagonal(v);
  const PrivacyParams p = privacy_time(1.0, 0.05);
  ASSERT_NEAR(4.0 * std::sqrt(2.0 * p.T), 14.35, 0.01);
  RngStream rng(2, 0);
  const auto r = complex_gaussian_mechanism(m, 1, p, rng);
  EXPECT_FALSE(r.gap_assumption_holds);
  EXPECT_EQ(numerical_rank(r.Y), 1u);
  EXPECT_TRUE(r.Y.is_real());
  EXPECT_TRUE(std::is_sorted(r.spectrum_hat.rbegin(), r.spectrum_hat.rend()));
}

TEST(ComplexMechanism, NoiseFrobeniusMean) {
  constexpr std::size_t d = 8;
  const double T = 2.0;
  const HermitianMatrix m = HermitianMatrix::identity(d);
  RngStream root(3, 0);
  std::vector<double> ratio(1000);
  for (std::size_t t = 0; t < ratio.size(); ++t) {
    RngStream rng = root.split(t);
    const auto r = complex_gaussian_mechanism(m, 1, PrivacyParams::from_noise_time(T), rng);
    ratio[t] = frobenius_distance(r.M_hat, m) / std::sqrt(T);
  }
  // sqrt of the summed entry variances: 4d on the diagonal, 4 per off-diagonal entry.
  const double expected = std::sqrt(4.0 * d + 4.0 * d * (d - 1.0));
  ASSERT_DOUBLE_EQ(expected, 2.0 * d);
  EXPECT_NEAR(mean(ratio) / expected, 1.0, 0.05);
}

TEST(ComplexMechanism, OutputIsRealRankK) {
  RngStream rng(4, 0);
  for (int t = 0; t < 20; ++t) {
    const HermitianMatrix m = random_real_psd(7, rng);
    const std::size_t k = 1 + rng.next_u64() % 6;
    const auto r = complex_gaussian_mechanism(m, k, PrivacyParams::from_noise_time(1.0), rng);
    EXPECT_TRUE(r.Y.is_real());
    EXPECT_LE(numerical_rank(r.Y), k);
  }
}

TEST(ComplexMechanism, RealOutputIsOptimalAmongRealRankK) {
  RngStream rng(5, 0);
  const HermitianMatrix m = random_real_psd(6, rng);
  constexpr std::size_t k = 2;
  const auto r = complex_gaussian_mechanism(m, k, PrivacyParams::from_noise_time(2.0), rng);
  const double best = frobenius_distance(r.M_hat_k, r.Y);
  for (int c = 0; c < 100; ++c) {
    ComplexMatrix b(6, k);
    for (auto& z : b.data()) z = rng.normal();
    ComplexMatrix s(k, k);
    for (std::size_t j = 0; j < k; ++j) s(j, j) = 5.0 * rng.normal();
    const auto z = HermitianMatrix::symmetrized(b * s * b.transpose());
    EXPECT_LE(best, frobenius_distance(r.M_hat_k, z) + 1e-9);
  }
  // Re(M_hat_k) itself may have rank above k.
  MechanismOptions raw;
  raw.output = OutputForm::RawRealPart;
  RngStream again(5, 1);
  std::size_t max_rank = 0;
  for (int t = 0; t < 10; ++t) {
    const auto rr = complex_gaussian_mechanism(m, 1, PrivacyParams::from_noise_time(50.0), again, raw);
    max_rank = std::max(max_rank, numerical_rank(rr.Y));
  }
  EXPECT_GT(max_rank, 1u);
}

TEST(Mechanisms, ComplexConsumesTheRealDrawFirst) {
  RngStream rng(6, 0);
  const HermitianMatrix m = random_real_psd(5, rng);
  std::vector<double> real_log, complex_log;
  RngStream a(6, 1), b(6, 1);
  a.attach_draw_log(&real_log);
  b.attach_draw_log(&complex_log);
  const auto rr = real_gaussian_mechanism(m, 2, PrivacyParams::from_noise_time(1.0), a);
  const auto cr = complex_gaussian_mechanism(m, 2, PrivacyParams::from_noise_time(1.0), b);
  ASSERT_EQ(real_log.size(), 25u);
  ASSERT_EQ(complex_log.size(), 50u);
  EXPECT_TRUE(std::equal(real_log.begin(), real_log.end(), complex_log.begin()));
  EXPECT_TRUE(cr.M_hat.real_part() == rr.M_hat);
}

TEST(Mechanisms, MetricInvariants) {
  RngStream rng(7, 0);
  for (int t = 0; t < 40; ++t) {
    const HermitianMatrix m = random_real_psd(6, rng);
    const std::size_t k = 1 + rng.next_u64() % 5;
    const PrivacyParams p = PrivacyParams::from_noise_time(0.5);
    const auto r = t % 2 ? complex_gaussian_mechanism(m, k, p, rng) : real_gaussian_mechanism(m, k, p, rng);
    const UtilityMetrics& u = r.metrics;
    EXPECT_LE(u.weak_frob_diff, u.strong_frob + 1e-9);
    EXPECT_GE(u.weak_frob_sq, -1e-6);
    for (double x : {u.strong_frob, u.subspace_frob, u.subspace_spec, u.hat_frob}) EXPECT_GE(x, -1e-9);
    EXPECT_LE(u.subspace_spec, u.subspace_frob + 1e-9);
  }
}

TEST(Mechanisms, InnerProductNonNegative) {
  // <M, H - H_hat> >= 0 because H maximizes <M, P> over rank-k projectors.
  RngStream rng(8, 0);
  for (int t = 0; t < 20; ++t) {
    const HermitianMatrix m = random_real_psd(5, rng);
    const auto r = complex_gaussian_mechanism(m, 2, PrivacyParams::from_noise_time(1.0), rng);
    EXPECT_GE(r.metrics.inner_product, -1e-9);
  }
}

TEST(Mechanisms, NoiseScaleCovariance) {
  const HermitianMatrix m = HermitianMatrix::identity(6);
  auto mean_noise = [&](double eps) {
    RngStream root(9, 0);
    std::vector<double> x(1000);
    for (std::size_t t = 0; t < x.size(); ++t) {
      RngStream rng = root.split(t);
      const auto r = complex_gaussian_mechanism(m, 1, privacy_time(eps, 0.01), rng);
      x[t] = frobenius_distance(r.M_hat, m);
    }
    return mean(x);
  };
  EXPECT_NEAR(mean_noise(2.0) / mean_noise(1.0), 0.5, 0.05);
}

TEST(RealMechanism, NoiselessAndSymmetric) {
  RngStream rng(10, 0);
  const HermitianMatrix m = random_real_psd(5, rng);
  const auto r0 = real_gaussian_mechanism(m, 3, PrivacyParams::from_noise_time(0.0), rng);
  EXPECT_LE(frobenius_distance(r0.Y, rank_k_truncate(eigh(m), 3)), 1e-9);
  for (int t = 0; t < 10; ++t) {
    const auto r = real_gaussian_mechanism(m, 3, PrivacyParams::from_noise_time(1.0), rng);
    EXPECT_TRUE(r.Y.is_real());
    EXPECT_TRUE(r.Y == r.M_hat_k);
  }
}

TEST(RealMechanism, DiagonalNoiseVariance) {
  const std::vector<double> one{1.0};
  const HermitianMatrix m = HermitianMatrix::diagonal(one);
  const PrivacyParams p = PrivacyParams::from_noise_time(0.3);
  RngStream rng(11, 0);
  std::vector<double> x(100000);
  for (auto& v : x) v = real_gaussian_mechanism(m, 1, p, rng).M_hat(0, 0).real() - 1.0;
  EXPECT_NEAR(variance(x) / (4.0 * p.T), 1.0, 0.05);
}

TEST(Mechanisms, InputValidation) {
  RngStream rng(12, 0);
  const std::vector<double> indefinite{1.0, -1.0};
  const HermitianMatrix bad = HermitianMatrix::diagonal(indefinite);
  const PrivacyParams p = PrivacyParams::from_noise_time(1.0);
  EXPECT_DPLR_ERROR(complex_gaussian_mechanism(bad, 1, p, rng), ErrorCode::InvalidInput);
  MechanismOptions lenient;
  lenient.psd_warning_only = true;
  const auto r = complex_gaussian_mechanism(bad, 1, p, rng, lenient);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_DPLR_ERROR(complex_gaussian_mechanism(HermitianMatrix::identity(3), 0, p, rng),
                    ErrorCode::InvalidRank);
  EXPECT_DPLR_ERROR(complex_gaussian_mechanism(HermitianMatrix::identity(3), 4, p, rng),
                    ErrorCode::InvalidRank);
  ComplexMatrix c(2, 2);
  c(0, 0) = 2.0;
  c(1, 1) = 2.0;
  c(0, 1) = Complex(0.0, 1.0);
  c(1, 0) = Complex(0.0, -1.0);
  EXPECT_DPLR_ERROR(real_gaussian_mechanism(HermitianMatrix(c), 1, p, rng), ErrorCode::InvalidInput);
}

TEST(Mechanisms, HugeSpectrumWarns) {
  const std::vector<double> v{1e16, 0.0};
  RngStream rng(13, 0);
  const auto r = complex_gaussian_mechanism(HermitianMatrix::diagonal(v), 1, privacy_time(1.0, 0.1), rng);
  EXPECT_TRUE(std::any_of(r.warnings.begin(), r.warnings.end(),
                          [](const std::string& w) { return w.find("d^50") != std::string::npos; }));
}

TEST(SubspaceMechanism, ProjectorProperties) {
  RngStream rng(14, 0);
  const HermitianMatrix m = random_real_psd(6, rng);
  const HermitianMatrix p0 = subspace_mechanism(m, 2, PrivacyParams::from_noise_time(0.0), NoiseEnsemble::GUE, rng);
  EXPECT_LE(frobenius_distance(p0, top_k_projector(eigh(m), 2)), 1e-9);
  for (auto ens : {NoiseEnsemble::GUE, NoiseEnsemble::GOE}) {
    const HermitianMatrix p = subspace_mechanism(m, 3, PrivacyParams::from_noise_time(2.0), ens, rng);
    EXPECT_NEAR(p.matrix().trace().real(), 3.0, 1e-9);
    EXPECT_LE(frobenius_distance(p.matrix() * p.matrix(), p.matrix()), 1e-9);
    if (ens == NoiseEnsemble::GOE) {
      EXPECT_TRUE(p.is_real(1e-12));
    }
  }
  EXPECT_DPLR_ERROR(subspace_mechanism(m, 6, PrivacyParams::from_noise_time(1.0), NoiseEnsemble::GUE, rng),
                    ErrorCode::InvalidRank);
}

TEST(Covariance, Examples) {
  EXPECT_TRUE(covariance_from_rows({{1.0, 0.0}, {0.0, 1.0}}, false) == HermitianMatrix::identity(2));
  const HermitianMatrix unit = covariance_from_rows({{0.6, 0.8}}, false);
  EXPECT_NEAR(unit.matrix().trace().real(), 1.0, 1e-15);
  EXPECT_EQ(numerical_rank(unit), 1u);
  const HermitianMatrix clipped = covariance_from_rows({{3.0, 4.0}}, true);
  EXPECT_LE(frobenius_distance(clipped, unit), 1e-15);
  EXPECT_DPLR_ERROR(covariance_from_rows({{3.0, 4.0}}, false), ErrorCode::RowNormViolation);
  EXPECT_DPLR_ERROR(covariance_from_rows({}, false), ErrorCode::InvalidInput);
  EXPECT_DPLR_ERROR(covariance_from_rows({{1.0}, {0.0, 0.0}}, false), ErrorCode::InvalidInput);
}

TEST(Covariance, ClippedRowsHaveUnitNorm) {
  RngStream rng(15, 0);
  std::vector<std::vector<double>> rows(20, std::vector<double>(4));
  for (auto& r : rows)
    for (auto& x : r) x = 2.0 * rng.normal();
  const DataMatrix data(rows, true);
  EXPECT_TRUE(data.clip_applied());
  for (const auto& r : data.rows()) {
    double s = 0.0;
    for (double x : r) s += x * x;
    EXPECT_LE(std::sqrt(s), 1.0 + 1e-12);
  }
  EXPECT_GE(eigvalsh(covariance(data)).back(), -1e-12);
}

TEST(NeighborPerturb, Examples) {
  RngStream rng(16, 0);
  const HermitianMatrix m = random_real_psd(3, rng);
  const std::vector<double> u{0.6, 0.0, 0.8};
  EXPECT_LE(frobenius_distance(neighbor_perturb(m, u, u), m), 1e-15);
  const std::vector<double> zero{0.0, 0.0}, e1{1.0, 0.0}, e2{0.0, 1.0};
  EXPECT_TRUE(neighbor_perturb(HermitianMatrix::zeros(2), zero, e1) == HermitianMatrix::diagonal(e1));
  const HermitianMatrix z = HermitianMatrix::zeros(2);
  EXPECT_NEAR(frobenius_distance(neighbor_perturb(z, e1, e2), z), std::sqrt(2.0), 1e-15);
  const std::vector<double> big{1.0, 1.0};
  EXPECT_DPLR_ERROR(neighbor_perturb(z, big, e1), ErrorCode::RowNormViolation);
}

}  // namespace
}  // namespace dplr
