#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dplr/ensemble.hpp"
#include "dplr/harness/spectrum.hpp"
#include "dplr/mechanism.hpp"

namespace dplr::harness {

enum class ExperimentKind { Utility, Gaps, Dbm, Rigidity, Verify };
enum class MechanismKind { Complex, Real };
enum class DbmMode { Matrix, Sde, Flow, Coupled };

std::string_view to_string(ExperimentKind kind) noexcept;
std::string_view to_string(MechanismKind kind) noexcept;
std::string_view to_string(DbmMode mode) noexcept;
DbmMode parse_dbm_mode(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Utility;
  std::size_t d = 8;
  std::size_t k = 1;
  std::size_t trials = 100;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> T_override;
  NoiseEnsemble ensemble = NoiseEnsemble::GUE;
  MechanismKind mechanism = MechanismKind::Complex;
  SpectrumFamily spectrum;
  bool random_basis = true;
  bool enforce_gap = false;
  std::uint64_t seed = 1;
  std::string output;

  // gaps
  std::vector<std::size_t> gap_indices;
  // rigidity
  double L = 1.0;
  bool rigidity_unit_scale = true;
  // dbm
  DbmMode dbm_mode = DbmMode::Sde;
  double t_end = 1.0;
  std::size_t steps = 1000;
  std::vector<double> initial;
  std::vector<double> xi0;
  double diagonal_variance = 4.0;
  // verify
  std::optional<std::string> inject_fault;

  // Throws InvalidInput when trials < 1 or the privacy input is not exactly
  // one of (epsilon, delta) / T_override, InvalidRank when k is outside
  // [1, d] (utility runs only).
  void validate() const;
  PrivacyParams privacy() const;
};

// JSON schema (all keys optional except "kind"):
// {
//   "kind": "utility" | "gaps" | "dbm" | "rigidity" | "verify",
//   "d": 32, "k": 2, "trials": 100, "seed": 1,
//   "epsilon": 1.0, "delta": 0.05,            // or "T": 1.0
//   "ensemble": "gue" | "goe", "mechanism": "complex" | "real",
//   "spectrum": {"family": "two_block" | "linear" | "custom",
//                "c": 2.0, "scale": 200.0, "values": [...]},
//   "basis": "random" | "diagonal", "enforce_gap": false,
//   "indices": [4], "L": 1.0, "rigidity_scale": "unit" | "raw",
//   "mode": "matrix" | "sde" | "flow" | "coupled", "t_end": 1.0,
//   "steps": 1000, "initial": [...], "xi0": [...], "diagonal_variance": 4.0,
//   "inject_fault": "variance-convention",
//   "output": "path.csv"
// }
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string to_json(const ExperimentConfig& config);

}  // namespace dplr::harness
