#include "pathlab/lattice_action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pathlab/error.hpp"
#include "pathlab/quadrature.hpp"

namespace pathlab {
namespace {

constexpr int kNewtonCap = 100;
constexpr double kGradientTolerance = 1e-10;

}  // namespace

double LagrangianSpec::potential(double x) const noexcept {
  const double x2 = x * x;
  return 0.5 * mass * omega * omega * x2 + coupling() * x2 * x2;
}

double LagrangianSpec::potential_slope(double x) const noexcept {
  return mass * omega * omega * x + 4.0 * coupling() * x * x * x;
}

double LagrangianSpec::potential_curvature(double x) const noexcept {
  return mass * omega * omega + 12.0 * coupling() * x * x;
}

LagrangianSpec LagrangianSpec::scaled(double factor) const {
  require(std::isfinite(factor) && factor > 0.0, "LagrangianSpec::scaled: factor must be > 0");
  LagrangianSpec out = *this;
  out.mass *= factor;
  out.lambda *= factor;
  return out;
}

void LagrangianSpec::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "lagrangian: mass must be finite and > 0");
  require(std::isfinite(omega) && omega >= 0.0, "lagrangian: omega must be finite and >= 0");
  require(std::isfinite(lambda), "lagrangian: lambda must be finite");
  if (kind == LagrangianKind::Free) {
    require(omega == 0.0 && lambda == 0.0, "lagrangian: free kind requires omega = 0 and lambda = 0");
  }
}

void LatticeConfig::validate() const {
  require(std::isfinite(phi0) && std::isfinite(phi1), "lattice config: boundary values must be finite");
  require(std::isfinite(t0) && std::isfinite(t1) && t1 > t0, "lattice config: need finite t1 > t0");
  require(n >= 0, "lattice config: n must be >= 0");
}

LatticePath LatticePath::straight_line(const LatticeConfig& config) {
  config.validate();
  LatticePath path{config, std::vector<double>(static_cast<std::size_t>(config.n))};
  const double steps = static_cast<double>(config.n + 1);
  for (int k = 1; k <= config.n; ++k) {
    const double s = static_cast<double>(k) / steps;
    path.interior[static_cast<std::size_t>(k - 1)] = config.phi0 + s * (config.phi1 - config.phi0);
  }
  return path;
}

std::vector<double> LatticePath::nodes() const {
  std::vector<double> x;
  x.reserve(interior.size() + 2);
  x.push_back(config.phi0);
  x.insert(x.end(), interior.begin(), interior.end());
  x.push_back(config.phi1);
  return x;
}

void LatticePath::validate() const {
  config.validate();
  require(interior.size() == static_cast<std::size_t>(config.n), "lattice path: interior length must equal n");
  for (double v : interior) require(std::isfinite(v), "lattice path: interior entries must be finite");
}

double discrete_action(const LagrangianSpec& lagrangian, const LatticePath& path) {
  lagrangian.validate();
  path.validate();
  const double eps = path.config.eps_prime();
  const auto x = path.nodes();
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) sum.add(lagrangian(x[i], (x[i + 1] - x[i]) / eps));
  return eps * sum.value().real();
}

std::vector<double> action_gradient(const LagrangianSpec& lagrangian, const LatticePath& path) {
  lagrangian.validate();
  path.validate();
  const double eps = path.config.eps_prime();
  const double m = lagrangian.mass;
  const auto x = path.nodes();
  std::vector<double> g(path.interior.size());
  for (std::size_t k = 1; k + 1 < x.size(); ++k) {
    g[k - 1] = m * ((x[k] - x[k - 1]) - (x[k + 1] - x[k])) / eps - eps * lagrangian.potential_slope(x[k]);
  }
  return g;
}

TridiagonalMatrix hessian_tridiagonal(const LagrangianSpec& lagrangian, const LatticePath& path) {
  lagrangian.validate();
  path.validate();
  const double eps = path.config.eps_prime();
  const double m = lagrangian.mass;
  TridiagonalMatrix h;
  h.diag.resize(path.interior.size());
  h.offdiag.assign(path.interior.empty() ? 0 : path.interior.size() - 1, -m / eps);
  for (std::size_t k = 0; k < path.interior.size(); ++k) {
    h.diag[k] = 2.0 * m / eps - eps * lagrangian.potential_curvature(path.interior[k]);
  }
  return h;
}

LatticePath classical_path_solve(const LagrangianSpec& lagrangian, const LatticeConfig& config) {
  lagrangian.validate();
  config.validate();
  require(config.n >= 1, "classical_path_solve: need n >= 1");
  if (lagrangian.kind == LagrangianKind::Harmonic && lagrangian.omega > 0.0) {
    const double wt = lagrangian.omega * config.duration();
    const double k = std::round(wt / std::numbers::pi);
    if (k >= 1.0 && std::abs(wt - k * std::numbers::pi) < 1e-6) {
      throw Error(ErrorCode::FocalPoint, "classical_path_solve: omega T = " + std::to_string(wt) +
                                             " is a focal point (multiple of pi)");
    }
  }

  LatticePath path = LatticePath::straight_line(config);
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= kNewtonCap; ++it) {
    const auto g = action_gradient(lagrangian, path);
    double norm = 0.0;
    for (double v : g) norm = std::max(norm, std::abs(v));
    if (!std::isfinite(norm)) break;
    if (norm <= kGradientTolerance) return path;
    // Once Newton stalls at the rounding floor of the gradient, accept it.
    double reach = 1.0;
    for (double v : path.nodes()) reach = std::max(reach, std::abs(v));
    const double scale = lagrangian.mass / config.eps_prime() * reach;
    if (norm >= best && norm <= 1e3 * std::numeric_limits<double>::epsilon() * scale) return path;
    best = std::min(best, norm);
    if (it == kNewtonCap) break;

    const auto step = solve_tridiagonal(hessian_tridiagonal(lagrangian, path), g);
    for (std::size_t k = 0; k < step.size(); ++k) path.interior[k] -= step[k];
  }
  throw Error(ErrorCode::NewtonDivergence,
              "classical_path_solve: no stationary path within " + std::to_string(kNewtonCap) + " iterations");
}

}  // namespace pathlab
