#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rocinf {

enum class ErrorCode {
  NonBinaryOutcome,
  DegenerateOutcome,
  NonFiniteValue,
  MissingColumn,
  InvalidConfig,
  IoError,
  ParseError,
  DimensionMismatch,
  DegenerateIndex,
  Separation,
  RankDeficient,
  NoConvergence,
  AllZeroClassWeight,
  SingularAMatrix,
  BandwidthDegenerate,
  TooFewPerClass,
  RatioUnavailable,
  ExcessiveFailures,
  BoundaryEstimate,
  VarianceUnavailable,
  DegenerateDifference,
};

std::string_view error_name(ErrorCode code);

/// Process exit status used by the CLI: 2 input/validation, 3 statistical
/// degeneracy, 4 convergence failure.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace rocinf
