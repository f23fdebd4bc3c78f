#include "rocinf/errors.hpp"

namespace rocinf {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonBinaryOutcome: return "NonBinaryOutcome";
    case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateIndex: return "DegenerateIndex";
    case ErrorCode::Separation: return "Separation";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AllZeroClassWeight: return "AllZeroClassWeight";
    case ErrorCode::SingularAMatrix: return "SingularAMatrix";
    case ErrorCode::BandwidthDegenerate: return "BandwidthDegenerate";
    case ErrorCode::TooFewPerClass: return "TooFewPerClass";
    case ErrorCode::RatioUnavailable: return "RatioUnavailable";
    case ErrorCode::ExcessiveFailures: return "ExcessiveFailures";
    case ErrorCode::BoundaryEstimate: return "BoundaryEstimate";
    case ErrorCode::VarianceUnavailable: return "VarianceUnavailable";
    case ErrorCode::DegenerateDifference: return "DegenerateDifference";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Separation:
    case ErrorCode::NoConvergence:
    case ErrorCode::ExcessiveFailures:
      return 4;
    case ErrorCode::DegenerateIndex:
    case ErrorCode::SingularAMatrix:
    case ErrorCode::BandwidthDegenerate:
    case ErrorCode::RatioUnavailable:
    case ErrorCode::BoundaryEstimate:
    case ErrorCode::VarianceUnavailable:
    case ErrorCode::DegenerateDifference:
      return 3;
    default:
      return 2;
  }
}

}  // namespace rocinf
