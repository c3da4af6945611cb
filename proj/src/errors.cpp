#include "dsscap/errors.hpp"

namespace dsscap {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParamViolation: return "ParamViolation";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonPositiveScalar: return "NonPositiveScalar";
    case ErrorCode::ModelUnsupported: return "ModelUnsupported";
    case ErrorCode::SearchTooLarge: return "SearchTooLarge";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::TooManyPermutations: return "TooManyPermutations";
    case ErrorCode::CausalityViolation: return "CausalityViolation";
    case ErrorCode::DuplicateIndices: return "DuplicateIndices";
    case ErrorCode::BadHelpers: return "BadHelpers";
    case ErrorCode::BadUserSet: return "BadUserSet";
    case ErrorCode::NonIntegerUnits: return "NonIntegerUnits";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::SandwichViolation: return "SandwichViolation";
    case ErrorCode::LiftNotHomogeneous: return "LiftNotHomogeneous";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
  }
  return "UnknownError";
}

bool is_internal_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SandwichViolation:
    case ErrorCode::LiftNotHomogeneous:
    case ErrorCode::OracleMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace dsscap
