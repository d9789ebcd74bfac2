#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surflines {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  NoEmbedding,
  ParseError,
  InhomogeneousError,
  FieldMismatch,
  SkewLines,
  EqualLines,
  SingularMatrix,
  NotSkew,
  NotOnSurface,
  DegreeTooSmall,
  NotATriad,
  NotSkewTriple,
  RescaleInconsistent,
  SingularChange,
  BudgetExceeded,
  IoError,
  Usage,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NoEmbedding: return "NoEmbedding";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InhomogeneousError: return "InhomogeneousError";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SkewLines: return "SkewLines";
    case ErrorCode::EqualLines: return "EqualLines";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotOnSurface: return "NotOnSurface";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::NotATriad: return "NotATriad";
    case ErrorCode::NotSkewTriple: return "NotSkewTriple";
    case ErrorCode::RescaleInconsistent: return "RescaleInconsistent";
    case ErrorCode::SingularChange: return "SingularChange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace surflines
