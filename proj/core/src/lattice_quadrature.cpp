#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "pathlab/convolution.hpp"
#include "pathlab/extrapolation.hpp"
#include "pathlab/propagator.hpp"

namespace pathlab {
namespace {

constexpr int kMaxInterior = 3;

// One factor of dS/dx_site placed inside the chain. A link insertion on link
// l (joining x_l and x_{l+1}) multiplies by m (x_{l+1} - x_l) / eps'; a site
// insertion multiplies by -eps' U'(x_site).
struct Insertion {
  std::optional<int> link;
  double link_sign = 1.0;
  std::optional<int> site;
};

struct ChainGrid {
  UniformGrid grid;
  std::vector<double> x;
};

ChainGrid chain_grid(const KernelSpec& spec, const LatticeConfig& config, double eta, std::size_t budget) {
  const LagrangianSpec& lag = spec.lagrangian;
  const double eps = config.eps_prime();
  const double zone = std::sqrt(std::numbers::pi * spec.h * eps / lag.mass);
  const Interval window =
      truncation_window(std::min(config.phi0, config.phi1), std::max(config.phi0, config.phi1), zone, eta);

  // Beyond the damping radius the integrand is below e^{-36}; resolving its
  // phase there buys nothing, so the rate bound uses the damped reach.
  const double reach = std::min(std::max(std::abs(window.lo), std::abs(window.hi)),
                                std::max(std::abs(config.phi0), std::abs(config.phi1)) + 6.0 / std::sqrt(eta));
  const double rate = (4.0 * lag.mass * reach / eps +
                       eps * (lag.mass * lag.omega * lag.omega * reach +
                              4.0 * std::abs(lag.coupling()) * reach * reach * reach)) /
                          spec.h +
                      2.0 * eta * reach;
  ChainGrid g{oscillatory_grid(window, rate, budget), {}};
  g.x.resize(g.grid.size);
  for (std::size_t j = 0; j < g.grid.size; ++j) g.x[j] = g.grid[j];
  return g;
}

ComplexAmplitude exact_normalization(const KernelSpec& spec, const LatticeConfig& config) {
  const double eps = config.eps_prime();
  const double half_n1 = 0.5 * static_cast<double>(config.n + 1);
  ComplexAmplitude z = std::polar(std::pow(spec.lagrangian.mass / (2.0 * std::numbers::pi * spec.h * eps), half_n1),
                                  -std::numbers::pi * half_n1 / 2.0);
  if (spec.normalization == Normalization::Paper) z *= normalization_ratio(spec, config);
  return z;
}

// Normalised lattice integral of exp(i S / h) exp(-eta |x|^2) times the
// chosen insertion.
ComplexAmplitude chain_integral(const KernelSpec& spec, const LatticeConfig& config, double eta,
                                std::size_t budget, const Insertion& ins) {
  const LagrangianSpec& lag = spec.lagrangian;
  const double m = lag.mass, h = spec.h, eps = config.eps_prime();
  const int n = config.n;
  const ChainGrid cg = chain_grid(spec, config, eta, budget);
  const std::size_t N = cg.grid.size;
  const double dx = cg.grid.spacing;
  const auto& x = cg.x;

  auto link_phase = [&](double d) { return m * d * d / (2.0 * h * eps); };
  auto velocity = [&](double d) { return m * d / eps; };
  std::vector<ComplexAmplitude> site(N);
  for (std::size_t j = 0; j < N; ++j) site[j] = std::polar(std::exp(-eta * x[j] * x[j]), -eps * lag.potential(x[j]) / h);

  std::vector<ComplexAmplitude> f(N);
  const double left_phase = -eps * lag.potential(config.phi0) / h;
  for (std::size_t j = 0; j < N; ++j) {
    const double d = x[j] - config.phi0;
    f[j] = std::polar(1.0, link_phase(d) + left_phase) * site[j];
    if (ins.link == 0) f[j] *= ins.link_sign * velocity(d);
    if (ins.site == 1) f[j] *= -eps * lag.potential_slope(x[j]);
  }

  if (n > 1) {
    std::vector<ComplexAmplitude> lag_kernel(2 * N - 1);
    for (std::size_t idx = 0; idx < lag_kernel.size(); ++idx) {
      const double d = (static_cast<double>(idx) - static_cast<double>(N - 1)) * dx;
      lag_kernel[idx] = std::polar(dx, link_phase(d));
    }
    const ToeplitzConvolver plain(lag_kernel, N);
    std::optional<ToeplitzConvolver> weighted;
    if (ins.link && *ins.link >= 1 && *ins.link < n) {
      auto w = lag_kernel;
      for (std::size_t idx = 0; idx < w.size(); ++idx) {
        w[idx] *= ins.link_sign * velocity((static_cast<double>(idx) - static_cast<double>(N - 1)) * dx);
      }
      weighted.emplace(w, N);
    }
    for (int k = 2; k <= n; ++k) {
      const bool use_weighted = ins.link == k - 1;
      f = (use_weighted ? *weighted : plain).apply(f);
      for (std::size_t j = 0; j < N; ++j) {
        f[j] *= site[j];
        if (ins.site == k) f[j] *= -eps * lag.potential_slope(x[j]);
      }
    }
  }

  for (std::size_t j = 0; j < N; ++j) {
    const double d = config.phi1 - x[j];
    f[j] *= std::polar(dx, link_phase(d));
    if (ins.link == n) f[j] *= ins.link_sign * velocity(d);
  }
  return ensure_finite(exact_normalization(spec, config) * mirrored_sum(f), "lattice quadrature");
}

void check_quadrature_inputs(const KernelSpec& spec, const LatticeConfig& config) {
  spec.validate();
  config.validate();
  if (config.n > kMaxInterior) {
    throw Error(ErrorCode::DimensionTooLarge,
                "direct lattice quadrature supports n <= 3, got n = " + std::to_string(config.n));
  }
}

ComplexAmplitude eta_limit(const ExtrapolationLadder& ladder, int order) {
  return ladder.size() > 1 ? richardson_extrapolate(ladder, order) : ladder.values.front();
}

}  // namespace

ComplexAmplitude lattice_kernel_damped(const KernelSpec& spec, const LatticeConfig& config, double eta,
                                       std::size_t step_budget) {
  check_quadrature_inputs(spec, config);
  require(std::isfinite(eta) && eta > 0.0, "lattice quadrature: eta must be > 0");
  if (config.n == 0) {
    const LagrangianSpec& lag = spec.lagrangian;
    const double eps = config.eps_prime();
    const double action = eps * lag(config.phi0, (config.phi1 - config.phi0) / eps);
    return exact_normalization(spec, config) * std::polar(1.0, action / spec.h);
  }
  return chain_integral(spec, config, eta, step_budget, {});
}

KernelValue lattice_kernel_quadrature(const KernelSpec& spec, const LatticeConfig& config,
                                      const RegularizationParams& reg) {
  check_quadrature_inputs(spec, config);
  reg.validate();
  if (config.n == 0) return {lattice_kernel_damped(spec, config, 1.0, reg.step_budget), config, 0.0, false};
  ExtrapolationLadder ladder;
  for (double eta : reg.eta_ladder) ladder.push(eta, lattice_kernel_damped(spec, config, eta, reg.step_budget));
  return {eta_limit(ladder, reg.richardson_order), config, reg.eta_ladder.back(), ladder.size() > 1};
}

ComplexAmplitude ehrenfest_residual_damped(const KernelSpec& spec, const LatticeConfig& config, int site,
                                           double eta, std::size_t step_budget) {
  check_quadrature_inputs(spec, config);
  require(site >= 1 && site <= config.n, "ehrenfest_residual: need 1 <= site <= n");
  require(std::isfinite(eta) && eta > 0.0, "ehrenfest_residual: eta must be > 0");
  // dS/dx_s = m (x_s - x_{s-1})/eps' - m (x_{s+1} - x_s)/eps' - eps' U'(x_s).
  const ComplexAmplitude incoming = chain_integral(spec, config, eta, step_budget, {site - 1, 1.0, std::nullopt});
  const ComplexAmplitude outgoing = chain_integral(spec, config, eta, step_budget, {site, -1.0, std::nullopt});
  ComplexAmplitude potential = 0.0;
  if (spec.lagrangian.omega != 0.0 || spec.lagrangian.coupling() != 0.0) {
    potential = chain_integral(spec, config, eta, step_budget, {std::nullopt, 1.0, site});
  }
  return incoming + outgoing + potential;
}

ComplexAmplitude ehrenfest_residual(const KernelSpec& spec, const LatticeConfig& config, int site,
                                    const RegularizationParams& reg) {
  reg.validate();
  ExtrapolationLadder ladder;
  for (double eta : reg.eta_ladder) {
    ladder.push(eta, ehrenfest_residual_damped(spec, config, site, eta, reg.step_budget));
  }
  return eta_limit(ladder, reg.richardson_order);
}

double ehrenfest_gradient_scale(const KernelSpec& spec, const LatticeConfig& config, int site,
                                const RegularizationParams& reg) {
  check_quadrature_inputs(spec, config);
  require(site >= 1 && site <= config.n, "ehrenfest_gradient_scale: need 1 <= site <= n");
  const KernelValue k = spec.lagrangian.kind == LagrangianKind::Quartic ? lattice_kernel_quadrature(spec, config, reg)
                                                                        : lattice_kernel_exact(spec, config);
  const LatticePath path = classical_path_solve(spec.lagrangian, config);
  const double curvature = hessian_tridiagonal(spec.lagrangian, path).diag[static_cast<std::size_t>(site - 1)];
  return std::abs(k.value) * std::sqrt(spec.h * std::abs(curvature));
}

}  // namespace pathlab
