#pragma once

#include <stdexcept>
#include <string>

namespace dsscap {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  ParamViolation,
  NegativeValue,
  IncompleteTable,
  IndexOutOfRange,
  NonPositiveScalar,
  ModelUnsupported,
  SearchTooLarge,
  NotAPermutation,
  ParamMismatch,
  TooManyPermutations,
  CausalityViolation,
  DuplicateIndices,
  BadHelpers,
  BadUserSet,
  NonIntegerUnits,
  InvalidField,
  // The remaining codes signal internal consistency failures, never bad input.
  SandwichViolation,
  LiftNotHomogeneous,
  OracleMismatch,
};

const char* error_code_name(ErrorCode code);

/// True for codes that indicate a bug in this library rather than bad input.
bool is_internal_error(ErrorCode code);

class DssError : public std::runtime_error {
public:
  DssError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace dsscap
