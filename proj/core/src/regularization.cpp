#include "pathlab/regularization.hpp"

#include <cmath>

namespace pathlab {

void RegularizationParams::validate() const {
  require(!eta_ladder.empty(), "regularization: eta ladder must not be empty");
  for (std::size_t k = 0; k < eta_ladder.size(); ++k) {
    require(std::isfinite(eta_ladder[k]) && eta_ladder[k] > 0.0, "regularization: eta must be finite and > 0");
    if (k > 0) require(eta_ladder[k] < eta_ladder[k - 1], "regularization: eta ladder must strictly decrease");
  }
  require(step_budget >= 16, "regularization: step_budget must be >= 16");
  require(richardson_order >= 1, "regularization: richardson_order must be >= 1");
  require(std::isfinite(search_window.lo) && std::isfinite(search_window.hi) &&
              search_window.lo < search_window.hi,
          "regularization: search window must be a finite non-empty interval");
  require(seeds >= 2, "regularization: need at least 2 seeds");
}

}  // namespace pathlab
