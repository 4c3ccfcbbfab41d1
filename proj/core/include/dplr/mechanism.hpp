#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dplr/eigen.hpp"
#include "dplr/ensemble.hpp"
#include "dplr/matrix.hpp"
#include "dplr/rng.hpp"

namespace dplr {

// (epsilon, delta) and the noise time T = 2 ln(1.25 / delta) / epsilon^2.
// The logarithm is natural.
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double T = 0.0;
  bool is_private = true;

  // Non-private hook: any T >= 0 without a privacy budget. T = 0 gives the
  // noiseless mechanism used by deterministic tests and T_override configs.
  static PrivacyParams from_noise_time(double T);
};

PrivacyParams privacy_time(double epsilon, double delta);

// sigma_k - sigma_{k+1} >= 4 sqrt(T d); inclusive boundary.
bool check_gap_assumption(std::span<const double> spectrum, std::size_t k, double T);

struct UtilityMetrics {
  double strong_frob = 0.0;     // ||Y - M_k||_F
  double weak_frob_sq = 0.0;    // ||M_hat_k - M||_F^2 - ||M_k - M||_F^2
  double weak_frob_diff = 0.0;  // ||Y - M||_F - ||M_k - M||_F
  double subspace_frob = 0.0;   // ||H_hat - H||_F with H = V_k V_k*
  double subspace_spec = 0.0;   // ||H_hat - H||_2
  double inner_product = 0.0;   // <M, H - H_hat>
  double hat_frob = 0.0;        // ||M_hat_k - M_k||_F (complex, before taking Y)
};

enum class OutputForm {
  // Best real rank-k approximation of Re(M_hat_k); the argmin over real
  // rank-k Z of ||M_hat_k - Z||_F.
  RealRankK,
  // Re(M_hat_k) as is. Its rank can reach 2k.
  RawRealPart,
};

struct MechanismOptions {
  bool psd_warning_only = false;
  OutputForm output = OutputForm::RealRankK;
};

struct MechanismResult {
  HermitianMatrix Y;
  HermitianMatrix M_hat;
  HermitianMatrix M_hat_k;
  std::vector<double> spectrum_hat;
  UtilityMetrics metrics;
  bool gap_assumption_holds = false;
  std::vector<std::string> warnings;
};

// Algorithm: W1, W2 iid N(0,1); G = (W1 + iW2) + (W1 + iW2)*;
// M_hat = M + sqrt(T) G; truncate to rank k; output a real matrix.
MechanismResult complex_gaussian_mechanism(const HermitianMatrix& m, std::size_t k,
                                           const PrivacyParams& params, RngStream& rng,
                                           const MechanismOptions& options = {});

// M + sqrt(T)(W1 + W1^T), truncated to rank k.
MechanismResult real_gaussian_mechanism(const HermitianMatrix& m, std::size_t k,
                                        const PrivacyParams& params, RngStream& rng,
                                        const MechanismOptions& options = {});

// Rank-k projector V_hat_k V_hat_k* of M + sqrt(T) * noise.
HermitianMatrix subspace_mechanism(const HermitianMatrix& m, std::size_t k,
                                   const PrivacyParams& params, NoiseEnsemble ensemble,
                                   RngStream& rng);

// Rows of norm <= 1 (after optional clipping).
class DataMatrix {
 public:
  DataMatrix(std::vector<std::vector<double>> rows, bool clip);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  bool clip_applied() const noexcept { return clip_applied_; }

 private:
  std::vector<std::vector<double>> rows_;
  std::size_t dim_ = 0;
  bool clip_applied_ = false;
};

HermitianMatrix covariance(const DataMatrix& data);  // A^T A
HermitianMatrix covariance_from_rows(std::vector<std::vector<double>> rows, bool clip);

// M - u u^T + v v^T.
HermitianMatrix neighbor_perturb(const HermitianMatrix& m, std::span<const double> u,
                                 std::span<const double> v);

}  // namespace dplr
