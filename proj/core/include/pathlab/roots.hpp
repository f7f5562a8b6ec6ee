#pragma once

#include <cstddef>
#include <vector>

#include "pathlab/objective.hpp"
#include "pathlab/quadrature.hpp"

namespace pathlab {

struct CriticalPoint {
  double location = 0.0;
  double second_derivative = 0.0;
};

/// All roots of f' in `window`, in increasing order.
///
/// Newton runs from `seeds` equally spaced starting points; every sign change
/// of f' between neighbouring seeds is also bisected, which catches roots
/// Newton missed or diverged from. Roots closer than 1e-9 are merged.
/// Throws DegenerateCriticalPoint if |f''| < 1e-8 at a root.
std::vector<CriticalPoint> find_critical_points(const ScalarObjective& objective,
                                                const Interval& window, std::size_t seeds);

}  // namespace pathlab
