#include "pathlab/error.hpp"

namespace pathlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegenerateCriticalPoint: return "DegenerateCriticalPoint";
    case ErrorCode::MultipleCriticalPoints: return "MultipleCriticalPoints";
    case ErrorCode::LadderTooShort: return "LadderTooShort";
    case ErrorCode::RatioViolation: return "RatioViolation";
    case ErrorCode::ZeroError: return "ZeroError";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::FocalPoint: return "FocalPoint";
    case ErrorCode::UnsupportedLagrangian: return "UnsupportedLagrangian";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace pathlab
