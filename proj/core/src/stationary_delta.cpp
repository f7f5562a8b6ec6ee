#include "pathlab/stationary_delta.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace pathlab {
namespace {

std::optional<CriticalPoint> unique_critical_point(const ScalarObjective& objective,
                                                   const RegularizationParams& reg) {
  const auto points = find_critical_points(objective, reg.search_window, reg.seeds);
  if (points.size() > 1) {
    throw Error(ErrorCode::MultipleCriticalPoints,
                "halved_delta: f has " + std::to_string(points.size()) + " critical points in the search window");
  }
  if (points.empty()) return std::nullopt;
  return points.front();
}

double fresnel_zone(double epsilon, const CriticalPoint& p) {
  return std::sqrt(2.0 * std::numbers::pi * epsilon / std::abs(p.second_derivative));
}

// Damped integral of exp(sign * i f/eps) * amplitude at one eta.
ComplexAmplitude damped_phase_integral(const ScalarObjective& objective,
                                       std::function<ComplexAmplitude(double)> amplitude, double sign,
                                       double epsilon, double eta, const Interval& window,
                                       std::size_t budget) {
  DampedOscillatoryIntegrand integrand{
      [&objective, sign, epsilon](double x) { return sign * objective.f(x) / epsilon; },
      std::move(amplitude), eta,
      [&objective, sign, epsilon](double x) { return sign * objective.df(x) / epsilon; }};
  return damped_quadrature(integrand, window, budget);
}

ComplexAmplitude eta_limit(const std::vector<double>& etas, const std::vector<ComplexAmplitude>& values,
                           int order) {
  if (values.size() == 1) return values.front();
  ExtrapolationLadder ladder{values, etas};
  return richardson_extrapolate(ladder, order);
}

void check_epsilon(double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be finite and > 0");
}

}  // namespace

ComplexAmplitude halved_delta(const ScalarObjective& objective, const Observable& observable,
                              double epsilon, const RegularizationParams& reg) {
  check_epsilon(epsilon);
  reg.validate();
  const auto point = unique_critical_point(objective, reg);
  const double centre = point ? point->location : 0.0;
  const double zone = point ? fresnel_zone(epsilon, *point) : 0.0;

  std::vector<ComplexAmplitude> values;
  for (double eta : reg.eta_ladder) {
    const Interval window = truncation_window(centre, centre, zone, eta);
    values.push_back(damped_phase_integral(objective, observable.g, 1.0, epsilon, eta, window, reg.step_budget) /
                     std::sqrt(epsilon));
  }
  return eta_limit(reg.eta_ladder, values, reg.richardson_order);
}

ComplexAmplitude delta_pairing(const ScalarObjective& objective, const Observable& observable,
                               double epsilon, const RegularizationParams& reg) {
  return std::norm(halved_delta(objective, observable, epsilon, reg));
}

ComplexAmplitude classical_delta_direct(const ScalarObjective& objective, const Observable& g,
                                        double epsilon, const RegularizationParams& reg) {
  check_epsilon(epsilon);
  reg.validate();
  const auto points = find_critical_points(objective, reg.search_window, reg.seeds);
  double first = 0.0, last = 0.0, zone = 0.0;
  if (!points.empty()) {
    first = points.front().location;
    last = points.back().location;
    for (const auto& p : points) zone = std::max(zone, fresnel_zone(epsilon, p));
  }

  std::vector<ComplexAmplitude> values;
  for (double eta : reg.eta_ladder) {
    const Interval window = truncation_window(first, last, zone, eta);
    const ComplexAmplitude over_x =
        damped_phase_integral(objective, g.g, -1.0, epsilon, eta, window, reg.step_budget);
    const ComplexAmplitude over_y = damped_phase_integral(
        objective, [](double) { return ComplexAmplitude(1.0, 0.0); }, 1.0, epsilon, eta, window, reg.step_budget);
    values.push_back(ensure_finite(over_x * over_y / epsilon, "classical_delta_direct"));
  }
  return eta_limit(reg.eta_ladder, values, reg.richardson_order);
}

double critical_point_oracle(const ScalarObjective& objective, const Observable& g, const Interval& window,
                             std::size_t seeds) {
  double sum = 0.0;
  for (const auto& p : find_critical_points(objective, window, seeds)) {
    sum += g(p.location).real() / std::abs(p.second_derivative);
  }
  return 2.0 * std::numbers::pi * sum;
}

ExtrapolationLadder delta_pairing_ladder(const ScalarObjective& objective, const Observable& observable,
                                         const std::vector<double>& epsilons,
                                         const RegularizationParams& reg) {
  ExtrapolationLadder ladder;
  for (double eps : epsilons) ladder.push(eps, delta_pairing(objective, observable, eps, reg));
  return ladder;
}

ExtrapolationLadder reduced_halved_ladder(const ScalarObjective& objective, const Observable& observable,
                                          const std::vector<double>& epsilons,
                                          const RegularizationParams& reg) {
  const auto point = unique_critical_point(objective, reg);
  require(point.has_value(), "reduced_halved_ladder: f has no critical point");
  const double f_star = objective.f(point->location);
  ExtrapolationLadder ladder;
  for (double eps : epsilons) {
    const ComplexAmplitude value = halved_delta(objective, observable, eps, reg);
    ladder.push(eps, value * std::polar(1.0, -std::fmod(f_star / eps, 2.0 * std::numbers::pi)));
  }
  return ladder;
}

double phase_law_residual(const ScalarObjective& objective, const Observable& observable,
                          const std::vector<double>& epsilons, const RegularizationParams& reg) {
  const auto point = unique_critical_point(objective, reg);
  require(point.has_value(), "phase_law_residual: f has no critical point");
  const auto ladder = reduced_halved_ladder(objective, observable, epsilons, reg);
  const ComplexAmplitude limit = ladder.size() > 1 ? richardson_extrapolate(ladder, 1) : ladder.values.front();
  const double expected =
      std::arg(observable(point->location)) + std::copysign(std::numbers::pi / 4.0, point->second_derivative);
  return std::arg(limit * std::polar(1.0, -expected));
}

}  // namespace pathlab
