#include "aloop/error.hpp"

namespace aloop {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSingular: return "SingularError";
    case ErrorCode::kNonDivisor: return "NonDivisorError";
    case ErrorCode::kJacobi: return "JacobiError";
    case ErrorCode::kUnsupportedParams: return "UnsupportedParams";
    case ErrorCode::kW1Violation: return "W1Violation";
    case ErrorCode::kLoopAxiom: return "LoopAxiomError";
    case ErrorCode::kNotASubloop: return "NotASubloop";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kPhiCondition: return "PhiConditionError";
    case ErrorCode::kNonCommutingBeta: return "NonCommutingBeta";
    case ErrorCode::kSingularIdPlusBeta: return "SingularIdPlusBeta";
    case ErrorCode::kNotInjective: return "NotInjective";
    case ErrorCode::kUnitInImage: return "UnitInImage";
    case ErrorCode::kBadSubfield: return "BadSubfield";
    case ErrorCode::kXSquareNonzero: return "XSquareNonzero";
    case ErrorCode::kDegenerateX: return "DegenerateX";
    case ErrorCode::kMismatch: return "Mismatch";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kDimTooLarge: return "DimTooLarge";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace aloop
