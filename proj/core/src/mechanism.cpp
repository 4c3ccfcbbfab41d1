#include "dplr/mechanism.hpp"

#include <cmath>
#include <limits>

#include "dplr/error.hpp"

namespace dplr {

PrivacyParams PrivacyParams::from_noise_time(double T) {
  require(T >= 0.0 && std::isfinite(T), ErrorCode::InvalidInput, "noise time must be >= 0");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan, T, false};
}

PrivacyParams privacy_time(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    fail(ErrorCode::InvalidPrivacyBudget, "epsilon must be positive and finite");
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorCode::InvalidPrivacyBudget, "delta must lie in (0, 1)");
  return {epsilon, delta, 2.0 * std::log(1.25 / delta) / (epsilon * epsilon), true};
}

bool check_gap_assumption(std::span<const double> spectrum, std::size_t k, double T) {
  const std::size_t d = spectrum.size();
  if (k < 1 || k >= d) fail(ErrorCode::InvalidRank, "gap assumption needs 1 <= k < d");
  require(T >= 0.0, ErrorCode::InvalidInput, "T must be non-negative");
  return spectrum[k - 1] - spectrum[k] >= 4.0 * std::sqrt(T * static_cast<double>(d));
}

namespace {

enum class Noise { Complex, Real };

void validate_input(const HermitianMatrix& m, std::size_t k, const EigenDecomposition& decomp,
                    const MechanismOptions& options, std::vector<std::string>& warnings) {
  const std::size_t d = m.dim();
  if (k < 1 || k > d) fail(ErrorCode::InvalidRank, "rank k must satisfy 1 <= k <= d");
  const double scale = frobenius_norm(m);
  auto complain = [&](const std::string& what) {
    if (!options.psd_warning_only) fail(ErrorCode::InvalidInput, what);
    warnings.push_back(what);
  };
  if (!m.is_real(1e-12)) complain("input matrix is not real symmetric");
  if (decomp.values.back() < -1e-9 * scale) complain("input matrix is not PSD");
  if (decomp.values.front() > std::pow(static_cast<double>(d), 50.0))
    warnings.push_back("sigma_1 exceeds d^50");
}

bool gap_holds(const std::vector<double>& spectrum, std::size_t k, double T) {
  if (k < spectrum.size()) return check_gap_assumption(spectrum, k, T);
  return spectrum.back() >= 4.0 * std::sqrt(T * static_cast<double>(spectrum.size()));
}

MechanismResult run(const HermitianMatrix& m, std::size_t k, const PrivacyParams& params,
                    RngStream& rng, const MechanismOptions& options, Noise noise) {
  MechanismResult out;
  const EigenDecomposition decomp = eigh(m);
  validate_input(m, k, decomp, options, out.warnings);
  const std::size_t d = m.dim();

  if (params.T > 0.0) {
    const NoiseEnsemble ensemble = noise == Noise::Complex ? NoiseEnsemble::GUE : NoiseEnsemble::GOE;
    out.M_hat = m + sample_noise(d, ensemble, rng).scaled(std::sqrt(params.T));
  } else {
    out.M_hat = m;
  }

  const EigenDecomposition decomp_hat = eigh(out.M_hat);
  out.spectrum_hat = decomp_hat.values;
  out.M_hat_k = rank_k_truncate(decomp_hat, k);

  if (noise == Noise::Real || options.output == OutputForm::RawRealPart) {
    out.Y = out.M_hat_k.real_part();
  } else {
    out.Y = best_rank_k_approximation(eigh(out.M_hat_k.real_part()), k);
  }

  const HermitianMatrix m_k = rank_k_truncate(decomp, k);
  const HermitianMatrix h = top_k_projector(decomp, k);
  const HermitianMatrix h_hat = top_k_projector(decomp_hat, k);
  const double tail = frobenius_distance(m_k, m);

  UtilityMetrics& u = out.metrics;
  u.strong_frob = frobenius_distance(out.Y, m_k);
  const double hat_to_m = frobenius_distance(out.M_hat_k, m);
  u.weak_frob_sq = hat_to_m * hat_to_m - tail * tail;
  u.weak_frob_diff = frobenius_distance(out.Y, m) - tail;
  const HermitianMatrix dh = h_hat - h;
  u.subspace_frob = frobenius_norm(dh);
  u.subspace_spec = spectral_norm(dh);
  u.inner_product = frobenius_inner(m.matrix(), (h - h_hat).matrix());
  u.hat_frob = frobenius_distance(out.M_hat_k, m_k);

  out.gap_assumption_holds = gap_holds(decomp.values, k, params.T);
  if (!params.is_private) out.warnings.push_back("noise time set directly; output is not private");
  return out;
}

}  // namespace

MechanismResult complex_gaussian_mechanism(const HermitianMatrix& m, std::size_t k,
                                           const PrivacyParams& params, RngStream& rng,
                                           const MechanismOptions& options) {
  return run(m, k, params, rng, options, Noise::Complex);
}

MechanismResult real_gaussian_mechanism(const HermitianMatrix& m, std::size_t k,
                                        const PrivacyParams& params, RngStream& rng,
                                        const MechanismOptions& options) {
  return run(m, k, params, rng, options, Noise::Real);
}

HermitianMatrix subspace_mechanism(const HermitianMatrix& m, std::size_t k,
                                   const PrivacyParams& params, NoiseEnsemble ensemble,
                                   RngStream& rng) {
  const std::size_t d = m.dim();
  if (k < 1 || k >= d) fail(ErrorCode::InvalidRank, "subspace mechanism needs 1 <= k < d");
  HermitianMatrix noised = m;
  if (params.T > 0.0) noised = m + sample_noise(d, ensemble, rng).scaled(std::sqrt(params.T));
  return top_k_projector(eigh(noised), k);
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

constexpr double kRowNormSlack = 1e-12;

}  // namespace

DataMatrix::DataMatrix(std::vector<std::vector<double>> rows, bool clip) : rows_(std::move(rows)) {
  require(!rows_.empty(), ErrorCode::InvalidInput, "data matrix needs at least one row");
  dim_ = rows_.front().size();
  require(dim_ > 0, ErrorCode::InvalidInput, "rows must be non-empty");
  for (auto& row : rows_) {
    require(row.size() == dim_, ErrorCode::InvalidInput, "rows have inconsistent dimension");
    for (double x : row)
      require(std::isfinite(x), ErrorCode::InvalidInput, "row has non-finite entries");
    const double n = norm2(row);
    if (n > 1.0 + kRowNormSlack) {
      if (!clip) fail(ErrorCode::RowNormViolation, "row norm exceeds 1");
      for (double& x : row) x /= n;
      clip_applied_ = true;
    }
  }
}

HermitianMatrix covariance(const DataMatrix& data) {
  const std::size_t d = data.dim();
  ComplexMatrix m(d, d);
  for (const auto& row : data.rows())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) += row[i] * row[j];
  return HermitianMatrix::symmetrized(std::move(m));
}

HermitianMatrix covariance_from_rows(std::vector<std::vector<double>> rows, bool clip) {
  return covariance(DataMatrix(std::move(rows), clip));
}

HermitianMatrix neighbor_perturb(const HermitianMatrix& m, std::span<const double> u,
                                 std::span<const double> v) {
  const std::size_t d = m.dim();
  require(u.size() == d && v.size() == d, ErrorCode::InvalidInput, "vector dimension mismatch");
  if (norm2(u) > 1.0 + kRowNormSlack || norm2(v) > 1.0 + kRowNormSlack)
    fail(ErrorCode::RowNormViolation, "neighbor vectors must have norm <= 1");
  ComplexMatrix out = m.matrix();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) += v[i] * v[j] - u[i] * u[j];
  return HermitianMatrix::symmetrized(std::move(out));
}

}  // namespace dplr
