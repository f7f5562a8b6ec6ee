#include "pathlab/rg_control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pathlab {
namespace {

constexpr double kFlatTolerance = 1e-12;

}  // namespace

int ControlLadder::interior_count(int level) const {
  return (base_config.n + 1) * (1 << level) - 1;
}

LatticeConfig ControlLadder::level_config(int level) const {
  LatticeConfig c = base_config;
  c.n = interior_count(level);
  return c;
}

double ControlLadder::eps_prime(int level) const {
  return level_config(level).eps_prime();
}

void ControlLadder::validate() const {
  base_config.validate();
  require(levels >= 2 && levels <= 20, "control ladder: levels must be in [2, 20]");
  require(std::isfinite(h) && h > 0.0, "control ladder: h must be > 0");
  require(std::isfinite(epsilon0) && epsilon0 >= 0.0, "control ladder: epsilon0 must be >= 0");
  require(std::isfinite(mu) && mu > 0.0, "control ladder: mu must be > 0");
}

ExtrapolationLadder run_ladder(const ControlLadder& ladder, const KernelSpec& spec,
                               const RegularizationParams& reg) {
  ladder.validate();
  spec.validate();
  const double eps0 = ladder.epsilon0 > 0.0 ? ladder.epsilon0 : ladder.h * ladder.eps_prime(0);

  ExtrapolationLadder out;
  for (int k = 0; k < ladder.levels; ++k) {
    const LatticeConfig config = ladder.level_config(k);
    KernelSpec level_spec = spec;
    switch (ladder.kind) {
      case SeriesKind::Renormalized:
        level_spec.h = ladder.h;
        break;
      case SeriesKind::Dressed:
        level_spec.h = ladder.h * ladder.mu;
        break;
      case SeriesKind::Bare:
        // exp(i eps' S_n / epsilon): the quantum scale is epsilon_k / eps'_k.
        level_spec.h = std::ldexp(eps0, -k) / config.eps_prime();
        break;
    }
    const KernelValue v = level_spec.lagrangian.kind == LagrangianKind::Quartic
                              ? lattice_kernel_quadrature(level_spec, config, reg)
                              : lattice_kernel_exact(level_spec, config);
    out.push(config.eps_prime(), v.value);
  }
  return out;
}

ExtrapolationLadder run_count_ladder(const KernelSpec& spec, const LatticeConfig& config,
                                     const std::vector<int>& counts) {
  require(counts.size() >= 2, "run_count_ladder: need at least 2 interior counts");
  ExtrapolationLadder out;
  for (int n : counts) {
    require(n >= 1, "run_count_ladder: interior counts must be >= 1");
    LatticeConfig c = config;
    c.n = n;
    out.push(c.duration() / static_cast<double>(n), lattice_kernel_exact(spec, c).value);
  }
  return out;
}

InvarianceReport verify_dressed_invariance(const KernelSpec& spec, const LatticeConfig& config,
                                           const std::vector<double>& mu_list) {
  require(!mu_list.empty(), "verify_dressed_invariance: empty mu list");
  InvarianceReport report;
  const ComplexAmplitude base = lattice_kernel_exact(spec, config).value;
  for (double mu : mu_list) {
    InvarianceEntry e;
    e.mu = mu;
    e.scaled_h = dressed_kernel(spec, config, mu).value;
    e.scaled_action = rescaled_action_kernel(spec, config, mu).value;
    e.deviation = relative_error(e.scaled_action, e.scaled_h);
    e.modulus_ratio = std::abs(e.scaled_h) / std::abs(base);
    e.passed = e.deviation <= report.tolerance;
    report.max_deviation = std::max(report.max_deviation, e.deviation);
    report.passed = report.passed && e.passed;
    report.entries.push_back(e);
  }
  return report;
}

std::vector<double> slice_widths(const LatticeConfig& config, const std::vector<int>& counts) {
  std::vector<double> out;
  for (int n : counts) {
    LatticeConfig c = config;
    c.n = n;
    out.push_back(c.eps_prime());
  }
  return out;
}

ConvergenceReport convergence_report(const ExtrapolationLadder& ladder, ComplexAmplitude reference,
                                     const std::vector<double>& order_parameters) {
  validate_ladder(ladder);
  require(is_finite(reference), "convergence_report: reference must be finite");
  ConvergenceReport report;
  bool flat = true;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    LevelError e{ladder.parameters[i], ladder.values[i], std::abs(ladder.values[i] - reference),
                 relative_error(ladder.values[i], reference)};
    flat = flat && e.rel_error <= kFlatTolerance;
    report.levels.push_back(e);
  }

  if (flat) {
    report.limit = ladder.values.back();
    report.limit_error = report.levels.back().abs_error;
    report.converged = true;
    return report;
  }

  ExtrapolationLadder for_order = ladder;
  if (!order_parameters.empty()) {
    require(order_parameters.size() == ladder.size(), "convergence_report: order parameters length mismatch");
    for_order.parameters = order_parameters;
  }
  report.order = estimate_convergence_order(for_order, reference);
  report.richardson_order = std::max(1, static_cast<int>(std::lround(*report.order)));
  report.limit = richardson_extrapolate(ladder, report.richardson_order);
  report.limit_error = std::abs(report.limit - reference);

  bool decreasing = true;
  for (std::size_t i = 1; i < report.levels.size(); ++i) {
    decreasing = decreasing && report.levels[i].abs_error < report.levels[i - 1].abs_error;
  }
  report.converged = decreasing && report.limit_error < 10.0 * report.levels.back().abs_error;
  return report;
}

}  // namespace pathlab
