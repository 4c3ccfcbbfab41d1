#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dplr/gap_stats.hpp"
#include "dplr/harness/config.hpp"
#include "dplr/harness/report.hpp"
#include "dplr/mechanism.hpp"

namespace dplr::harness {

// Stream ids. Trial t of a campaign draws from RngStream(seed, id).split(t).
inline constexpr std::uint64_t kUtilityStream = 1;
inline constexpr std::uint64_t kGapStream = 2;
inline constexpr std::uint64_t kRigidityStream = 3;
inline constexpr std::uint64_t kDbmStream = 4;

struct UtilitySummary {
  std::vector<double> spectrum;
  std::vector<UtilityMetrics> trials;
  bool gap_assumption = false;
  double gap_T = 0.0;  // T used for the gap check (2T under an (epsilon, delta) budget)
  // RMS over trials; weak_frob_sq holds sqrt(max(mean, 0)) instead.
  UtilityMetrics rms;
  UtilityMetrics theory;  // leading-mode bounds, constant 1, explicit polylog
  UtilityMetrics rate;    // same with unit polylog
  std::vector<std::string> warnings;
};

struct UtilityCampaign {
  CsvReport report;
  UtilitySummary summary;
};

UtilityCampaign run_utility_campaign(const ExperimentConfig& config);

struct GapCampaign {
  CsvReport report;
  std::vector<TailSample> samples;
};

// One TailSample per requested index (default d / 2).
GapCampaign run_gap_campaign(const ExperimentConfig& config);

struct RigiditySummary {
  std::vector<double> max_ratio;  // per trial, max_j |eta_j - omega_j| / envelope_j
  double median = 0.0;
  double q90 = 0.0;
  double worst = 0.0;
  double fraction_within = 0.0;  // share of trials with max_ratio <= 1
  double classical_residual = 0.0;
};

struct RigidityCampaign {
  CsvReport report;
  RigiditySummary summary;
};

// Eigenvalues are divided by the off-diagonal entry scale (2 for GUE,
// sqrt(2) for GOE) unless config.rigidity_unit_scale is false.
RigidityCampaign run_rigidity_check(const ExperimentConfig& config);

// Trajectory table: trial, time, gamma_1..gamma_d (and xi_1..xi_d plus the
// domination violation in coupled mode).
CsvReport run_dbm_campaign(const ExperimentConfig& config);

// Dispatch on config.kind for the CSV-producing kinds.
CsvReport run_experiment(const ExperimentConfig& config);

}  // namespace dplr::harness
