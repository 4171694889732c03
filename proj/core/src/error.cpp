#include "moikit/error.hpp"

namespace moikit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CoincidentNodes: return "CoincidentNodes";
    case ErrorCode::InsufficientDerivatives: return "InsufficientDerivatives";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::EvaluationDomain: return "EvaluationDomain";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingPermutation: return "MissingPermutation";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::HolderMismatch: return "HolderMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace moikit
