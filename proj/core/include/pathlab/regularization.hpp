#pragma once

#include <cstddef>
#include <vector>

#include "pathlab/quadrature.hpp"

namespace pathlab {

/// Damping ladder and quadrature limits shared by every regularised
/// evaluation. The static scale epsilon and the quantum scale h are passed to
/// each operation explicitly.
struct RegularizationParams {
  /// Damping strengths eta, each half its predecessor; extrapolated to 0.
  std::vector<double> eta_ladder{0.5, 0.25, 0.125, 0.0625, 0.03125};
  /// Node budget per one-dimensional quadrature or lattice grid.
  std::size_t step_budget = std::size_t{1} << 24;
  /// Leading power of the eta error series.
  int richardson_order = 1;
  /// Where critical points are searched for.
  Interval search_window{-10.0, 10.0};
  std::size_t seeds = 64;

  /// Throws InvalidArgument on an unusable configuration.
  void validate() const;
};

}  // namespace pathlab
