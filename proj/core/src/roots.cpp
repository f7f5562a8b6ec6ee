#include "pathlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace pathlab {
namespace {

constexpr int kNewtonCap = 100;
constexpr double kMergeTolerance = 1e-9;
constexpr double kDegenerate = 1e-8;

std::optional<double> newton(const ScalarObjective& obj, double x, const Interval& window) {
  const double reach = window.width();
  for (int it = 0; it < kNewtonCap; ++it) {
    const double g = obj.df(x);
    if (g == 0.0) return x;
    const double h = obj.d2f(x);
    if (h == 0.0 || !std::isfinite(h) || !std::isfinite(g)) return std::nullopt;
    const double step = g / h;
    x -= step;
    if (!std::isfinite(x) || x < window.lo - reach || x > window.hi + reach) return std::nullopt;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) return x;
  }
  return std::nullopt;
}

double bisect(const ScalarObjective& obj, double a, double b) {
  double ga = obj.df(a);
  for (int it = 0; it < 200 && b - a > 0.0; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    const double gm = obj.df(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (ga < 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ScalarObjective& objective,
                                                const Interval& window, std::size_t seeds) {
  require(static_cast<bool>(objective.df) && static_cast<bool>(objective.d2f),
          "find_critical_points: objective needs df and d2f");
  require(std::isfinite(window.lo) && std::isfinite(window.hi) && window.lo < window.hi,
          "find_critical_points: window must be a finite non-empty interval");
  require(seeds >= 2, "find_critical_points: need at least 2 seeds");

  std::vector<double> roots;
  const double dx = window.width() / static_cast<double>(seeds - 1);
  double prev_x = window.lo;
  double prev_g = objective.df(prev_x);
  for (std::size_t k = 0; k < seeds; ++k) {
    const double x = k + 1 == seeds ? window.hi : window.lo + static_cast<double>(k) * dx;
    const double g = objective.df(x);
    if (g == 0.0) roots.push_back(x);
    if (k > 0 && ((g < 0.0 && prev_g > 0.0) || (g > 0.0 && prev_g < 0.0))) {
      roots.push_back(bisect(objective, prev_x, x));
    }
    if (auto r = newton(objective, x, window)) roots.push_back(*r);
    prev_x = x;
    prev_g = g;
  }

  // Bisection leaves the root to within rounding of the bracket; one Newton
  // polish step per root puts every copy on the same floating value.
  for (double& r : roots) {
    const double h = objective.d2f(r);
    if (h != 0.0 && std::isfinite(h)) {
      const double polished = r - objective.df(r) / h;
      if (std::abs(polished - r) < kMergeTolerance) r = polished;
    }
  }
  std::erase_if(roots, [&](double r) { return !window.contains(r); });
  std::sort(roots.begin(), roots.end());

  std::vector<CriticalPoint> out;
  for (double r : roots) {
    if (!out.empty() && r - out.back().location <= kMergeTolerance) continue;
    const double h = objective.d2f(r);
    if (!(std::abs(h) >= kDegenerate)) {
      throw Error(ErrorCode::DegenerateCriticalPoint,
                  "find_critical_points: |f''| = " + std::to_string(std::abs(h)) + " at x = " + std::to_string(r));
    }
    out.push_back({r, h});
  }
  return out;
}

}  // namespace pathlab
