#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glidesafe {

enum class ErrorCode {
  kInvalidArgument,
  kNoEquilibrium,
  kDegenerateVelocity,
  kNoSolution,
  kAmbiguousSolution,
  kOutsideEnvelope,
  kEmptyInterval,
  kAsinDomain,
  kInsufficientSamples,
  kInfeasible,
  kNoMatch,
  kCellInfeasible,
  kIoError,
  kSchemaMismatch,
  kInvariantViolation,
  kWindTriangleFailure,
  kNonFiniteState,
  kSequenceInfeasible,
  kNoPath,
  kEmptyInput,
  kConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNoEquilibrium: return "NoEquilibrium";
    case ErrorCode::kDegenerateVelocity: return "DegenerateVelocity";
    case ErrorCode::kNoSolution: return "NoSolution";
    case ErrorCode::kAmbiguousSolution: return "AmbiguousSolution";
    case ErrorCode::kOutsideEnvelope: return "OutsideEnvelope";
    case ErrorCode::kEmptyInterval: return "EmptyInterval";
    case ErrorCode::kAsinDomain: return "AsinDomain";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNoMatch: return "NoMatch";
    case ErrorCode::kCellInfeasible: return "CellInfeasible";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kWindTriangleFailure: return "WindTriangleFailure";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kSequenceInfeasible: return "SequenceInfeasible";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace glidesafe
