#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moikit {

enum class ErrorCode {
  CoincidentNodes,
  InsufficientDerivatives,
  NotHermitian,
  ConvergenceFailure,
  EvaluationDomain,
  ArityMismatch,
  DimensionMismatch,
  MissingPermutation,
  InvalidP,
  HolderMismatch,
  InvalidArgument,
  NonFinite,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failed
/// contract so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace moikit
