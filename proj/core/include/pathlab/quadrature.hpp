#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pathlab/amplitude.hpp"

namespace pathlab {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double centre() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Smallest interval containing both arguments.
Interval hull(const Interval& a, const Interval& b) noexcept;

/// amplitude(x) * exp(i * phase(x)) * exp(-eta * x^2).
///
/// `phase_slope` is optional. When it is empty the phase derivative is taken
/// by central differences on the probe grid used to size the rule.
struct DampedOscillatoryIntegrand {
  std::function<double(double)> phase;
  std::function<ComplexAmplitude(double)> amplitude;
  double eta = 0.0;
  std::function<double(double)> phase_slope;
};

/// Composite quadrature of the damped integrand over `window`.
///
/// The rule is 8-point Gauss-Legendre on equal panels. Panel width is
/// pi / R with R = max|phase'| + max|envelope'| / max|envelope| over the
/// window (envelope = amplitude * damping), so the mean node spacing never
/// exceeds (pi/8) / max|phase'|.
///
/// Throws NonFiniteIntegrand if the integrand is not finite at a node and
/// BudgetExceeded when the required node count exceeds `step_budget`.
ComplexAmplitude damped_quadrature(const DampedOscillatoryIntegrand& integrand,
                                   const Interval& window,
                                   std::size_t step_budget);

/// Largest local oscillation rate (radians per unit length) seen on a probe
/// grid, counting the phase and the relative variation of the envelope.
double estimate_oscillation_rate(const DampedOscillatoryIntegrand& integrand,
                                 const Interval& window);

/// Truncation window for a damped oscillatory integral whose stationary
/// points lie in [first, last]: max(50 Fresnel zones, 6 / sqrt(eta)) on
/// either side, widened so that it also covers the damping centre x = 0.
/// `fresnel_zone` is sqrt(2 pi eps / |f''|), or 0 when unknown.
Interval truncation_window(double first, double last, double fresnel_zone, double eta);

/// Uniform grid x_j = centre + (j - (N-1)/2) * spacing. Offsets from the
/// centre are exactly antisymmetric, so a grid centred at 0 is exactly mirrored.
struct UniformGrid {
  double centre = 0.0;
  double spacing = 0.0;
  std::size_t size = 0;

  double operator[](std::size_t j) const noexcept {
    return centre + (static_cast<double>(j) - 0.5 * static_cast<double>(size - 1)) * spacing;
  }
};

/// Grid covering `window` with spacing <= (pi/8) / max_rate.
UniformGrid oscillatory_grid(const Interval& window, double max_rate, std::size_t step_budget);

/// Compensated sum, accumulated in mirrored pairs (j, N-1-j) from the outside
/// in. Values that are exactly antisymmetric about the middle sum to 0.
ComplexAmplitude mirrored_sum(std::span<const ComplexAmplitude> values) noexcept;

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(ComplexAmplitude v) noexcept {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  ComplexAmplitude value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

}  // namespace pathlab
