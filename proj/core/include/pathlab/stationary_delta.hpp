#pragma once

#include <vector>

#include "pathlab/extrapolation.hpp"
#include "pathlab/objective.hpp"
#include "pathlab/regularization.hpp"
#include "pathlab/roots.hpp"

namespace pathlab {

/// epsilon^{-1/2} * integral of exp(i f(x)/epsilon) O(x) dx, damped by
/// exp(-eta x^2) and extrapolated eta -> 0 over reg.eta_ladder.
///
/// Requires at most one critical point of f in reg.search_window
/// (MultipleCriticalPoints otherwise). Objectives with none are allowed; their
/// value is exponentially small.
ComplexAmplitude halved_delta(const ScalarObjective& objective, const Observable& observable,
                              double epsilon, const RegularizationParams& reg);

/// |halved_delta|^2: the pairing of the measure with g = |O|^2.
ComplexAmplitude delta_pairing(const ScalarObjective& objective, const Observable& observable,
                               double epsilon, const RegularizationParams& reg);

/// (1/epsilon) * double integral of exp(i (f(y) - f(x))/epsilon) g(x) dx dy.
///
/// The integrand separates in x and y, so the product rule over the square is
/// the product of two one-dimensional damped sums. The node budget applies
/// per axis. Sums over every critical point in the search window.
ComplexAmplitude classical_delta_direct(const ScalarObjective& objective, const Observable& g,
                                        double epsilon, const RegularizationParams& reg);

/// 2 pi * sum over critical points x* in `window` of g(x*) / |f''(x*)|.
double critical_point_oracle(const ScalarObjective& objective, const Observable& g,
                             const Interval& window, std::size_t seeds = 64);

/// delta_pairing at each epsilon of a halving ladder.
ExtrapolationLadder delta_pairing_ladder(const ScalarObjective& objective, const Observable& observable,
                                         const std::vector<double>& epsilons,
                                         const RegularizationParams& reg);

/// halved_delta * exp(-i f(x*)/epsilon) at each epsilon: the part of the
/// halved form whose epsilon -> 0 limit is finite.
ExtrapolationLadder reduced_halved_ladder(const ScalarObjective& objective, const Observable& observable,
                                          const std::vector<double>& epsilons,
                                          const RegularizationParams& reg);

/// arg(halved) - f(x*)/epsilon - arg O(x*) - (pi/4) sign f''(x*), wrapped to
/// (-pi, pi], in the epsilon -> 0 limit (Richardson order 1 over `epsilons`).
double phase_law_residual(const ScalarObjective& objective, const Observable& observable,
                          const std::vector<double>& epsilons, const RegularizationParams& reg);

}  // namespace pathlab
