#pragma once

#include <stdexcept>
#include <string>

namespace knot {

enum class ErrorCode {
  // validation-class: bad inputs, rejected before any computation
  Validation,
  EpsOutOfRange,
  BadExponents,
  ROutOfRange,
  DimensionMismatch,
  CoincidentVertices,
  BadCurveSpec,
  BadConfig,
  // numerical-class: computation cannot proceed or failed to converge
  NonRegular,
  NonEmbedded,
  CenterHit,
  CenterTooClose,
  DomainTooLarge,
  NoForwardIntersection,
  BracketNotFound,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

  // validation errors map to CLI exit code 2, numerical failures to 3
  bool is_validation() const {
    switch (code_) {
      case ErrorCode::Validation:
      case ErrorCode::EpsOutOfRange:
      case ErrorCode::BadExponents:
      case ErrorCode::ROutOfRange:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::CoincidentVertices:
      case ErrorCode::BadCurveSpec:
      case ErrorCode::BadConfig:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::ROutOfRange: return "ROutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CoincidentVertices: return "CoincidentVertices";
    case ErrorCode::BadCurveSpec: return "BadCurveSpec";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::NonRegular: return "NonRegular";
    case ErrorCode::NonEmbedded: return "NonEmbedded";
    case ErrorCode::CenterHit: return "CenterHit";
    case ErrorCode::CenterTooClose: return "CenterTooClose";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::NoForwardIntersection: return "NoForwardIntersection";
    case ErrorCode::BracketNotFound: return "BracketNotFound";
  }
  return "Unknown";
}

}  // namespace knot
