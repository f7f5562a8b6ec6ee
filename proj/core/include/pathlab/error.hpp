#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathlab {

/// One code per failure class. The CLI maps InvalidArgument to a validation
/// exit status and every other code to a numerical-failure status.
enum class ErrorCode {
  InvalidArgument,
  NonFiniteIntegrand,
  BudgetExceeded,
  DegenerateCriticalPoint,
  MultipleCriticalPoints,
  LadderTooShort,
  RatioViolation,
  ZeroError,
  NewtonDivergence,
  FocalPoint,
  UnsupportedLagrangian,
  DimensionTooLarge,
  Overflow,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, const std::string& what,
                    ErrorCode code = ErrorCode::InvalidArgument) {
  if (!condition) throw Error(code, what);
}

}  // namespace pathlab
