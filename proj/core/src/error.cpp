#include "dplr/error.hpp"

namespace dplr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::InvalidPrivacyBudget: return "InvalidPrivacyBudget";
    case ErrorCode::RowNormViolation: return "RowNormViolation";
    case ErrorCode::StiffnessFailure: return "StiffnessFailure";
    case ErrorCode::NoGaps: return "NoGaps";
    case ErrorCode::InsufficientTailData: return "InsufficientTailData";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace dplr
