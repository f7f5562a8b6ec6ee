#pragma once

#include <vector>

#include "pathlab/error.hpp"
#include "pathlab/tridiagonal.hpp"

namespace pathlab {

enum class LagrangianKind { Free, Harmonic, Quartic };

/// L(x, v) = m v^2 / 2 - U(x), U(x) = m w^2 x^2 / 2 + lambda x^4.
/// lambda only enters for the quartic kind.
struct LagrangianSpec {
  LagrangianKind kind = LagrangianKind::Free;
  double mass = 1.0;
  double omega = 0.0;
  double lambda = 0.0;

  static LagrangianSpec free(double mass = 1.0) { return {LagrangianKind::Free, mass, 0.0, 0.0}; }
  static LagrangianSpec harmonic(double mass, double omega) { return {LagrangianKind::Harmonic, mass, omega, 0.0}; }
  static LagrangianSpec quartic(double mass, double omega, double lambda) {
    return {LagrangianKind::Quartic, mass, omega, lambda};
  }

  double coupling() const noexcept { return kind == LagrangianKind::Quartic ? lambda : 0.0; }
  double potential(double x) const noexcept;
  double potential_slope(double x) const noexcept;
  double potential_curvature(double x) const noexcept;
  double operator()(double x, double v) const noexcept { return 0.5 * mass * v * v - potential(x); }

  /// The Lagrangian multiplied by `factor` (mass and coupling scale, omega does not).
  LagrangianSpec scaled(double factor) const;

  void validate() const;
};

struct LatticeConfig {
  double phi0 = 0.0;
  double phi1 = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  int n = 0;

  double duration() const noexcept { return t1 - t0; }
  double eps_prime() const noexcept { return (t1 - t0) / static_cast<double>(n + 1); }
  /// Time of node i, 0 <= i <= n + 1.
  double time(int i) const noexcept { return t0 + static_cast<double>(i) * eps_prime(); }

  void validate() const;
};

struct LatticePath {
  LatticeConfig config;
  std::vector<double> interior;

  /// Interior on the straight line between the boundary values.
  static LatticePath straight_line(const LatticeConfig& config);
  /// x_0 .. x_{n+1}.
  std::vector<double> nodes() const;

  void validate() const;
};

/// eps' * sum_{i=0}^{n} L(x_i, (x_{i+1} - x_i)/eps').
double discrete_action(const LagrangianSpec& lagrangian, const LatticePath& path);

/// dS/dx_k for k = 1..n.
std::vector<double> action_gradient(const LagrangianSpec& lagrangian, const LatticePath& path);

/// d^2 S / dx_i dx_j as a tridiagonal pair.
TridiagonalMatrix hessian_tridiagonal(const LagrangianSpec& lagrangian, const LatticePath& path);

/// Stationary point of the lattice action at fixed boundary values, by Newton
/// from the straight line. Throws FocalPoint for harmonic configurations with
/// omega T within 1e-6 of a positive multiple of pi, NewtonDivergence after
/// 100 iterations.
LatticePath classical_path_solve(const LagrangianSpec& lagrangian, const LatticeConfig& config);

}  // namespace pathlab
