#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opalg {

enum class ErrorCode {
  DivisionByZero,
  InvalidWeight,
  PoleAtWeight,
  ZeroPolynomial,
  InvalidContext,
  ParseError,
  UnknownOperator,
  SymbolOrderConflict,
  InvalidRuleSet,
  StepLimitExceeded,
  UnverifiedTheory,
  MonomialNotBelowAmbiguity,
  BoundExceeded,
  WeightMismatch,
  MissingAssignment,
  NonunitalModel,
  InvalidArgument,
  Internal,
};

constexpr std::string_view name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::PoleAtWeight: return "PoleAtWeight";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownOperator: return "UnknownOperator";
    case ErrorCode::SymbolOrderConflict: return "SymbolOrderConflict";
    case ErrorCode::InvalidRuleSet: return "InvalidRuleSet";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::UnverifiedTheory: return "UnverifiedTheory";
    case ErrorCode::MonomialNotBelowAmbiguity: return "MonomialNotBelowAmbiguity";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::MissingAssignment: return "MissingAssignment";
    case ErrorCode::NonunitalModel: return "NonunitalModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the stable codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opalg
