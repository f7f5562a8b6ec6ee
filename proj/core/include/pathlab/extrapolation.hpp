#pragma once

#include <vector>

#include "pathlab/amplitude.hpp"

namespace pathlab {

/// Values a(h_k) at strictly decreasing positive step sizes h_k.
struct ExtrapolationLadder {
  std::vector<ComplexAmplitude> values;
  std::vector<double> parameters;

  std::size_t size() const noexcept { return values.size(); }
  void push(double parameter, ComplexAmplitude value) {
    parameters.push_back(parameter);
    values.push_back(value);
  }
};

/// Limit h -> 0 under the model a(h) = A + sum_{j=0}^{k-2} c_j h^{order+j}.
///
/// The k x k system is solved directly, so polynomial data of that form is
/// reproduced to rounding. Throws LadderTooShort for fewer than 2 entries and
/// RatioViolation unless each step is half its predecessor within 1%.
ComplexAmplitude richardson_extrapolate(const ExtrapolationLadder& ladder, int order);

/// Least-squares slope of log|a(h) - reference| against log h.
/// Throws ZeroError if any entry equals the reference exactly.
double estimate_convergence_order(const ExtrapolationLadder& ladder, ComplexAmplitude reference);

/// Throws InvalidArgument / LadderTooShort if the ladder breaks its invariants.
void validate_ladder(const ExtrapolationLadder& ladder);

}  // namespace pathlab
