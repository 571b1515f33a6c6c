#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropharm {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  DuplicateId,
  UnknownVertex,
  UnknownEdge,
  UnknownLeaf,
  NotCubic,
  Disconnected,
  NonPositiveLength,
  BadRibbon,
  SelfLoopEdge,
  Unbalanced,
  InfiniteIntegral,
  NotPathOrLoop,
  NotALoop,
  ResiduesDontSumToZero,
  DimensionMismatch,
  SingularSystem,
  TooFewLeaves,
  UnsupportedDimensionForSvg,
  NotTropical,
  BadBasis,
  NonPositiveResidues,
  EvaluationAtPuncture,
  MinimumDensityViolation,
  EmptyAfterClipping,
  NotATree,
  NonIntegerResidues,
  ZeroCoordinate,
  InternalError,
};

/// Stable machine-readable name of an error code, e.g. "NotCubic".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tropharm
