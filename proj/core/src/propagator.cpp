#include "pathlab/propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pathlab/extrapolation.hpp"

namespace pathlab {
namespace {

constexpr double kFocalTolerance = 1e-6;

void check_quadratic_focal(const LagrangianSpec& lagrangian, double duration) {
  if (lagrangian.omega == 0.0) return;
  const double wt = lagrangian.omega * duration;
  if (std::abs(std::sin(wt)) <= kFocalTolerance) {
    throw Error(ErrorCode::FocalPoint, "sin(omega T) = " + std::to_string(std::sin(wt)) + " is at a focal point");
  }
  if (wt > std::numbers::pi) {
    throw Error(ErrorCode::FocalPoint, "omega T = " + std::to_string(wt) + " lies beyond the first focal point");
  }
}

// (m / (2 pi i h eps))^{1/2} on the principal branch, times exp(i phase).
ComplexAmplitude free_prefactor(double m, double h, double eps, double phase) {
  return std::polar(std::sqrt(m / (2.0 * std::numbers::pi * h * eps)), phase - std::numbers::pi / 4.0);
}

}  // namespace

void KernelSpec::validate() const {
  lagrangian.validate();
  require(std::isfinite(h) && h > 0.0, "kernel spec: h must be finite and > 0");
}

ComplexAmplitude normalization_ratio(const KernelSpec& spec, const LatticeConfig& config) {
  spec.validate();
  config.validate();
  const double eps = config.eps_prime();
  const double n = static_cast<double>(config.n);
  const double modulus = std::pow(2.0 * std::numbers::pi * spec.h * eps / spec.lagrangian.mass, 0.5 * (n + 1.0)) *
                         std::pow(spec.h * eps, -0.5 * n);
  return std::polar(modulus, std::numbers::pi * (n + 1.0) / 4.0);
}

KernelValue lattice_kernel_exact(const KernelSpec& spec, const LatticeConfig& config) {
  spec.validate();
  config.validate();
  const LagrangianSpec& lag = spec.lagrangian;
  if (lag.kind == LagrangianKind::Quartic) {
    throw Error(ErrorCode::UnsupportedLagrangian, "lattice_kernel_exact: quartic actions have no closed form");
  }
  check_quadratic_focal(lag, config.duration());

  const double eps = config.eps_prime();
  ComplexAmplitude value;
  if (config.n == 0) {
    const double action = eps * lag(config.phi0, (config.phi1 - config.phi0) / eps);
    value = free_prefactor(lag.mass, spec.h, eps, action / spec.h);
  } else {
    const LatticePath path = classical_path_solve(lag, config);
    const double action = discrete_action(lag, path);
    // A = Hessian * eps' / m, built directly so the mass cancels exactly.
    const double w_eps = lag.omega * eps;
    const std::vector<double> diag(static_cast<std::size_t>(config.n), 2.0 - w_eps * w_eps);
    const std::vector<double> offdiag(static_cast<std::size_t>(config.n - 1), -1.0);
    const auto minors = leading_minors(diag, offdiag);
    for (double d : minors) {
      if (!(d > 0.0)) throw Error(ErrorCode::FocalPoint, "lattice_kernel_exact: lattice Hessian is not positive definite");
    }
    value = free_prefactor(lag.mass, spec.h, eps, action / spec.h) / std::sqrt(minors.back());
  }
  if (spec.normalization == Normalization::Paper) value *= normalization_ratio(spec, config);
  return {ensure_finite(value, "lattice_kernel_exact"), config, 0.0, false};
}

KernelValue dressed_kernel(const KernelSpec& spec, const LatticeConfig& config, double mu) {
  require(std::isfinite(mu) && mu > 0.0, "dressed_kernel: mu must be finite and > 0");
  KernelSpec scaled = spec;
  scaled.h = spec.h * mu;
  return lattice_kernel_exact(scaled, config);
}

KernelValue rescaled_action_kernel(const KernelSpec& spec, const LatticeConfig& config, double mu) {
  require(std::isfinite(mu) && mu > 0.0, "rescaled_action_kernel: mu must be finite and > 0");
  KernelSpec scaled = spec;
  scaled.lagrangian = spec.lagrangian.scaled(1.0 / mu);
  return lattice_kernel_exact(scaled, config);
}

ComplexAmplitude oracle_free_kernel(double m, double h, double phi0, double phi1, double T) {
  require(m > 0.0 && h > 0.0 && T > 0.0, "oracle_free_kernel: need m, h, T > 0");
  const double d = phi1 - phi0;
  return ensure_finite(free_prefactor(m, h, T, m * d * d / (2.0 * h * T)), "oracle_free_kernel");
}

ComplexAmplitude oracle_harmonic_kernel(double m, double omega, double h, double phi0, double phi1, double T) {
  require(m > 0.0 && h > 0.0 && T > 0.0 && omega >= 0.0, "oracle_harmonic_kernel: need m, h, T > 0, omega >= 0");
  if (omega == 0.0) return oracle_free_kernel(m, h, phi0, phi1, T);
  const double s = std::sin(omega * T);
  if (std::abs(s) <= kFocalTolerance) {
    throw Error(ErrorCode::FocalPoint, "oracle_harmonic_kernel: |sin(omega T)| <= 1e-6");
  }
  const ComplexAmplitude pre = std::sqrt(ComplexAmplitude(0.0, -m * omega / (2.0 * std::numbers::pi * h * s)));
  const double phase =
      m * omega / (2.0 * h * s) * ((phi0 * phi0 + phi1 * phi1) * std::cos(omega * T) - 2.0 * phi0 * phi1);
  return ensure_finite(pre * std::polar(1.0, phase), "oracle_harmonic_kernel");
}

KernelFunction oracle_kernel_function(const LagrangianSpec& lagrangian, double h, double t0, double t1) {
  lagrangian.validate();
  require(t1 > t0, "oracle_kernel_function: need t1 > t0");
  require(lagrangian.kind != LagrangianKind::Quartic,
          "oracle_kernel_function: no closed form for quartic actions", ErrorCode::UnsupportedLagrangian);
  const double m = lagrangian.mass, w = lagrangian.omega, T = t1 - t0;
  if (w > 0.0) check_quadratic_focal(lagrangian, T);
  return {[m, w, h, T](double x, double y) { return oracle_harmonic_kernel(m, w, h, x, y, T); }, t0, t1};
}

KernelFunction compose_kernels(KernelFunction left, KernelFunction right, double mid_time,
                               const Interval& quad_window, const RegularizationParams& reg) {
  reg.validate();
  require(static_cast<bool>(left.eval) && static_cast<bool>(right.eval), "compose_kernels: empty kernel");
  require(std::isfinite(quad_window.lo) && std::isfinite(quad_window.hi) && quad_window.lo <= quad_window.hi,
          "compose_kernels: quad_window must be a finite interval");
  const double tol = 1e-12 * std::max(1.0, std::abs(mid_time));
  require(std::abs(left.t_end - mid_time) <= tol && std::abs(right.t_start - mid_time) <= tol,
          "compose_kernels: left must end and right must start at mid_time");

  const double t_start = left.t_start, t_end = right.t_end;
  auto eval = [left = std::move(left), right = std::move(right), quad_window, reg](double x, double y) {
    ExtrapolationLadder ladder;
    for (double eta : reg.eta_ladder) {
      const double reach = 6.0 / std::sqrt(eta);
      const Interval window = hull(quad_window, {-reach, reach});
      DampedOscillatoryIntegrand integrand{[](double) { return 0.0; },
                                           [&](double z) { return left(x, z) * right(z, y); }, eta,
                                           [](double) { return 0.0; }};
      ladder.push(eta, damped_quadrature(integrand, window, reg.step_budget));
    }
    return ladder.size() > 1 ? richardson_extrapolate(ladder, reg.richardson_order) : ladder.values.front();
  };
  return {std::move(eval), t_start, t_end};
}

}  // namespace pathlab
