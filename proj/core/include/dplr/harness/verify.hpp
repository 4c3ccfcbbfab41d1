#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dplr::harness {

struct CheckResult {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double wall_seconds = 0.0;
  double metric = 0.0;
  double threshold = 0.0;  // passed iff metric <= threshold
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  // Negative control. The only recognised fault is "variance-convention",
  // which samples the calibration noise with off-diagonal variance 1.
  std::optional<std::string> inject_fault;
  std::size_t ks_trials = 2000;   // per arm
  std::size_t coupled_runs = 100;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const noexcept;
  std::string to_json() const;
};

// eckart_young, weyl, sin_theta, moment_calibration, ks_sde_vs_matrix,
// coupled_gap, classical_sandwich; in that order.
const std::vector<std::string>& verify_check_names();

CheckResult run_check(std::string_view name, const VerifyOptions& options);
VerifyReport run_verify_suite(const VerifyOptions& options = {});

}  // namespace dplr::harness
