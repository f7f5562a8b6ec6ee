#include "pathlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace pathlab {
namespace {

// 8-point Gauss-Legendre on [-1, 1], symmetric half.
constexpr std::array<double, 4> kGaussNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kGaussWeights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};
constexpr std::size_t kNodesPerPanel = 8;
constexpr std::size_t kProbePoints = 4097;
constexpr std::size_t kMinPanels = 2;
// Relative amplitude variation is resolved four times more finely than phase:
// a decaying envelope has no cancellation to hide panel error behind.
constexpr double kEnvelopeWeight = 4.0;

ComplexAmplitude envelope(const DampedOscillatoryIntegrand& f, double x) {
  return f.amplitude(x) * std::exp(-f.eta * x * x);
}

double phase_derivative(const DampedOscillatoryIntegrand& f, double x) {
  if (f.phase_slope) return f.phase_slope(x);
  const double step = 1e-6 * std::max(1.0, std::abs(x));
  return (f.phase(x + step) - f.phase(x - step)) / (2.0 * step);
}

void check_finite(double v, double x, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFiniteIntegrand,
                std::string("damped_quadrature: ") + what + " not finite at x = " + std::to_string(x));
  }
}

void validate(const DampedOscillatoryIntegrand& f, const Interval& window) {
  require(static_cast<bool>(f.phase) && static_cast<bool>(f.amplitude),
          "damped_quadrature: integrand needs phase and amplitude");
  require(std::isfinite(f.eta) && f.eta >= 0.0, "damped_quadrature: eta must be finite and >= 0");
  require(std::isfinite(window.lo) && std::isfinite(window.hi) && window.lo <= window.hi,
          "damped_quadrature: window must be a finite interval");
}

}  // namespace

Interval hull(const Interval& a, const Interval& b) noexcept {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

double estimate_oscillation_rate(const DampedOscillatoryIntegrand& f, const Interval& window) {
  validate(f, window);
  if (window.width() == 0.0) return 0.0;

  const double dx = window.width() / static_cast<double>(kProbePoints - 1);
  double max_phase_rate = 0.0;
  double max_envelope = 0.0;
  double max_envelope_slope = 0.0;
  std::vector<ComplexAmplitude> values(kProbePoints);
  std::vector<ComplexAmplitude> slopes(kProbePoints);

  for (std::size_t k = 0; k < kProbePoints; ++k) {
    const double x = window.lo + static_cast<double>(k) * dx;
    const double rate = phase_derivative(f, x);
    check_finite(rate, x, "phase derivative");
    max_phase_rate = std::max(max_phase_rate, std::abs(rate));

    const double step = 1e-7 * std::max(1.0, std::abs(x));
    const ComplexAmplitude e = envelope(f, x);
    const ComplexAmplitude de = (envelope(f, x + step) - envelope(f, x - step)) / (2.0 * step);
    check_finite(e.real() + e.imag(), x, "amplitude");
    check_finite(de.real() + de.imag(), x, "amplitude derivative");
    values[k] = e;
    slopes[k] = de;
    max_envelope = std::max(max_envelope, std::abs(e));
  }
  if (max_envelope == 0.0) return max_phase_rate;

  // Split d(envelope)/dx into a rotation of the envelope's own phase and a
  // change of its modulus. Rotation is counted only where the envelope is
  // not negligible; the modulus part is bounded by |E'| so zeros are harmless.
  double max_rotation = 0.0;
  for (std::size_t k = 0; k < kProbePoints; ++k) {
    const double mod = std::abs(values[k]);
    const ComplexAmplitude cross = slopes[k] * std::conj(values[k]);
    if (mod >= 1e-3 * max_envelope) {
      max_rotation = std::max(max_rotation, std::abs(cross.imag()) / (mod * mod));
      max_envelope_slope = std::max(max_envelope_slope, std::abs(cross.real()) / mod);
    } else {
      max_envelope_slope = std::max(max_envelope_slope, std::abs(slopes[k]));
    }
  }
  return max_phase_rate + max_rotation + kEnvelopeWeight * max_envelope_slope / max_envelope;
}

ComplexAmplitude damped_quadrature(const DampedOscillatoryIntegrand& f, const Interval& window,
                                   std::size_t step_budget) {
  validate(f, window);
  require(step_budget >= 16, "damped_quadrature: step_budget must be >= 16");
  if (window.width() == 0.0) return {0.0, 0.0};

  const double rate = estimate_oscillation_rate(f, window);
  const double wanted = std::ceil(window.width() * rate / std::numbers::pi);
  if (!std::isfinite(wanted) ||
      wanted > static_cast<double>(step_budget / kNodesPerPanel)) {
    throw Error(ErrorCode::BudgetExceeded,
                "damped_quadrature: resolving the phase needs ~" + std::to_string(wanted * kNodesPerPanel) +
                    " nodes, budget is " + std::to_string(step_budget));
  }
  const std::size_t panels = std::max<std::size_t>(kMinPanels, static_cast<std::size_t>(wanted));
  if (panels * kNodesPerPanel > step_budget) {
    throw Error(ErrorCode::BudgetExceeded, "damped_quadrature: minimum rule exceeds step_budget");
  }

  const double width = window.width() / static_cast<double>(panels);
  const double half = 0.5 * width;
  CompensatedSum sum;
  auto node = [&](double x, double w) {
    const ComplexAmplitude a = f.amplitude(x);
    const double phi = f.phase(x);
    check_finite(a.real() + a.imag(), x, "amplitude");
    check_finite(phi, x, "phase");
    sum.add(w * a * std::polar(std::exp(-f.eta * x * x), phi));
  };
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = window.lo + (static_cast<double>(p) + 0.5) * width;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      const double w = half * kGaussWeights[k];
      node(mid - half * kGaussNodes[k], w);
      node(mid + half * kGaussNodes[k], w);
    }
  }
  return ensure_finite(sum.value(), "damped_quadrature");
}

Interval truncation_window(double first, double last, double fresnel_zone, double eta) {
  require(first <= last, "truncation_window: first stationary point after last");
  require(eta >= 0.0 && fresnel_zone >= 0.0, "truncation_window: negative scale");
  require(eta > 0.0 || fresnel_zone > 0.0, "truncation_window: needs damping or a Fresnel scale");
  const double half_width = std::max(50.0 * fresnel_zone, eta > 0.0 ? 6.0 / std::sqrt(eta) : 0.0);
  if (eta == 0.0) return {first - half_width, last + half_width};
  return {std::min(first, 0.0) - half_width, std::max(last, 0.0) + half_width};
}

UniformGrid oscillatory_grid(const Interval& window, double max_rate, std::size_t step_budget) {
  require(std::isfinite(window.lo) && std::isfinite(window.hi) && window.lo < window.hi,
          "oscillatory_grid: window must be a finite non-empty interval");
  require(std::isfinite(max_rate) && max_rate >= 0.0, "oscillatory_grid: rate must be finite");
  const double target = max_rate > 0.0 ? (std::numbers::pi / 8.0) / max_rate : window.width() / 16.0;
  const double intervals = std::ceil(window.width() / target);
  if (intervals + 1.0 > static_cast<double>(step_budget)) {
    throw Error(ErrorCode::BudgetExceeded,
                "oscillatory_grid: needs " + std::to_string(intervals + 1.0) + " nodes, budget is " +
                    std::to_string(step_budget));
  }
  const auto n = static_cast<std::size_t>(std::max(16.0, intervals));
  return {window.centre(), window.width() / static_cast<double>(n), n + 1};
}

ComplexAmplitude mirrored_sum(std::span<const ComplexAmplitude> values) noexcept {
  CompensatedSum sum;
  const std::size_t n = values.size();
  for (std::size_t j = 0; j < n / 2; ++j) sum.add(values[j] + values[n - 1 - j]);
  if (n % 2 == 1) sum.add(values[n / 2]);
  return sum.value();
}

}  // namespace pathlab
