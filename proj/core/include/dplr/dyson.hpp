#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dplr/eigen.hpp"
#include "dplr/ensemble.hpp"
#include "dplr/matrix.hpp"
#include "dplr/rng.hpp"

namespace dplr {

class TimeGrid {
 public:
  TimeGrid(double t0, double t_end, std::size_t steps);

  double t0() const noexcept { return t0_; }
  double t_end() const noexcept { return t_end_; }
  std::size_t steps() const noexcept { return steps_; }
  double dt() const noexcept { return (t_end_ - t0_) / static_cast<double>(steps_); }
  double time(std::size_t i) const noexcept;

 private:
  double t0_;
  double t_end_;
  std::size_t steps_;
};

// Eigenvalue (and optionally eigenvector) states at each of the
// steps + 1 grid times. Eigenvalue vectors are sorted non-increasing.
struct TrajectorySet {
  TimeGrid grid{0.0, 1.0, 1};
  NoiseEnsemble ensemble = NoiseEnsemble::GUE;
  std::vector<std::vector<double>> eigenvalues;
  std::vector<ComplexMatrix> eigenvectors;
  double max_unitarity_defect = 0.0;
  double min_step = 0.0;
  std::size_t halvings = 0;

  int beta() const noexcept { return dplr::beta(ensemble); }
  const std::vector<double>& final_eigenvalues() const { return eigenvalues.back(); }
};

struct DiffusionOptions {
  bool store_vectors = false;
  bool zero_noise = false;  // test hook: Phi(t) = M
};

// Phi(t) = M + B(t), sampled exactly at every grid time by accumulating
// independent Brownian increments (B(t0) ~ sqrt(t0) * noise when t0 > 0).
TrajectorySet matrix_diffusion_path(const HermitianMatrix& m, const TimeGrid& grid,
                                    NoiseEnsemble ensemble, RngStream& rng,
                                    const DiffusionOptions& options = {});

struct SdeOptions {
  // Variance per unit time of each diagonal increment dB_ii. The default 4
  // matches B = W + W*; the drift coefficient follows as beta * v / 2 so the
  // SDE stays consistent with matrix_diffusion_path. v = 2 reproduces the
  // textbook coefficients beta and beta / 2.
  double diagonal_variance = 4.0;
  bool zero_noise = false;
  int max_halvings = 20;
};

// Repulsion coefficient beta * v / 2 multiplying sum_j 1 / (g_i - g_j).
double repulsion_coefficient(NoiseEnsemble ensemble, const SdeOptions& options) noexcept;

// Drift vector sum_{j != i} c / (g_i - g_j).
std::vector<double> eigenvalue_drift(std::span<const double> gamma, double coefficient);

// Euler-Maruyama for the Dyson eigenvalue SDE with step halving near
// collisions (Brownian-bridge refinement of the increment, floor dt * 2^-20).
// Coincident initial values are separated by one exact matrix-diffusion
// step of length dt.
TrajectorySet eigenvalue_sde_path(std::span<const double> gamma0, NoiseEnsemble ensemble,
                                  const TimeGrid& grid, RngStream& rng,
                                  const SdeOptions& options = {});

// Joint Euler-Maruyama of eigenvalues and eigenvectors driven by one matrix
// increment per step, re-orthonormalized with modified Gram-Schmidt.
TrajectorySet eigenvector_flow_path(const EigenDecomposition& decomp0, NoiseEnsemble ensemble,
                                    const TimeGrid& grid, RngStream& rng,
                                    const SdeOptions& options = {});

struct CoupledGapReport {
  double max_violation = 0.0;  // max over t, i of (xi gap - gamma gap)^+
  std::size_t violation_index = 0;  // 1-based gap index of the max (0 if none)
  std::optional<double> first_crossing_time;
  TrajectorySet xi;
  TrajectorySet gamma;
};

// Two eigenvalue SDE solutions driven by the same diagonal increments.
// Requires xi0 gaps <= gamma0 gaps index-wise.
CoupledGapReport coupled_gap_run(std::span<const double> xi0, std::span<const double> gamma0,
                                 NoiseEnsemble ensemble, const TimeGrid& grid, RngStream& rng,
                                 const SdeOptions& options = {});

// Modified Gram-Schmidt on the columns, in place.
void orthonormalize_columns(ComplexMatrix& u);

}  // namespace dplr
