#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dplr {

enum class ErrorCode {
  InvalidInput,
  InvalidRank,
  DegenerateGap,
  InvalidPrivacyBudget,
  RowNormViolation,
  StiffnessFailure,
  NoGaps,
  InsufficientTailData,
  InvalidSpectrum,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; `code()` lets
// callers (and tests) dispatch on the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

}  // namespace dplr
