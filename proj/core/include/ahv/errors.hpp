#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ahv {

enum class ErrorCode {
  InvalidArgument,
  DegeneratePivot,
  IncompatibleStructure,
  BoundaryProximity,
  SingularMetric,
  FrameDiscontinuity,
  CrossPathMismatch,
  ChainViolation,
  WrongPatch,
  NotInSigma,
  ChartOverflow,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegeneratePivot: return "DegeneratePivot";
    case ErrorCode::IncompatibleStructure: return "IncompatibleStructure";
    case ErrorCode::BoundaryProximity: return "BoundaryProximity";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::FrameDiscontinuity: return "FrameDiscontinuity";
    case ErrorCode::CrossPathMismatch: return "CrossPathMismatch";
    case ErrorCode::ChainViolation: return "ChainViolation";
    case ErrorCode::WrongPatch: return "WrongPatch";
    case ErrorCode::NotInSigma: return "NotInSigma";
    case ErrorCode::ChartOverflow: return "ChartOverflow";
  }
  return "Unknown";
}

}  // namespace ahv
