#pragma once

#include <functional>

#include "pathlab/amplitude.hpp"
#include "pathlab/lattice_action.hpp"
#include "pathlab/quadrature.hpp"
#include "pathlab/regularization.hpp"

namespace pathlab {

/// paper: (h eps')^{-n/2};  exact: (2 pi i h eps' / m)^{-(n+1)/2}.
enum class Normalization { Paper, Exact };

struct KernelSpec {
  LagrangianSpec lagrangian;
  double h = 1.0;
  Normalization normalization = Normalization::Exact;

  void validate() const;
};

struct KernelValue {
  ComplexAmplitude value;
  LatticeConfig config;
  double eta_used = 0.0;
  bool extrapolated = false;
};

/// K_paper / K_exact = (2 pi i h eps'/m)^{(n+1)/2} (h eps')^{-n/2}, principal branch.
ComplexAmplitude normalization_ratio(const KernelSpec& spec, const LatticeConfig& config);

/// Closed-form n-fold Gaussian-Fresnel integral of the lattice kernel:
/// (m / (2 pi i h eps'))^{1/2} det(A)^{-1/2} exp(i S_cl / h) with
/// A = Hessian * eps' / m, under exact normalization.
///
/// Free and harmonic only (UnsupportedLagrangian otherwise). Harmonic
/// configurations with |sin wT| <= 1e-6, with wT beyond pi, or whose lattice
/// Hessian is not positive definite throw FocalPoint.
KernelValue lattice_kernel_exact(const KernelSpec& spec, const LatticeConfig& config);

/// Direct damped quadrature over the n <= 3 interior points, extrapolated
/// eta -> 0 over reg.eta_ladder. Works for every Lagrangian kind.
///
/// The integrand is a chain of nearest-neighbour link factors, so the nested
/// sums over a shared uniform grid are evaluated as successive FFT
/// convolutions. Throws DimensionTooLarge for n > 3.
KernelValue lattice_kernel_quadrature(const KernelSpec& spec, const LatticeConfig& config,
                                      const RegularizationParams& reg);

/// The same quadrature at one damping strength, without extrapolation.
ComplexAmplitude lattice_kernel_damped(const KernelSpec& spec, const LatticeConfig& config, double eta,
                                       std::size_t step_budget);

/// lattice_kernel_exact at quantum scale mu * h.
KernelValue dressed_kernel(const KernelSpec& spec, const LatticeConfig& config, double mu);

/// lattice_kernel_exact of the action S / mu at the unchanged scale h.
KernelValue rescaled_action_kernel(const KernelSpec& spec, const LatticeConfig& config, double mu);

/// sqrt(m / (2 pi i h T)) exp(i m (phi1 - phi0)^2 / (2 h T)).
ComplexAmplitude oracle_free_kernel(double m, double h, double phi0, double phi1, double T);

/// Mehler kernel sqrt(m w / (2 pi i h sin wT)) exp(i m w ((phi0^2 + phi1^2) cos wT - 2 phi0 phi1) / (2 h sin wT)).
/// Throws FocalPoint if |sin wT| <= 1e-6.
ComplexAmplitude oracle_harmonic_kernel(double m, double omega, double h, double phi0, double phi1, double T);

/// A kernel K(x, y) acting over [t_start, t_end].
struct KernelFunction {
  std::function<ComplexAmplitude(double, double)> eval;
  double t_start = 0.0;
  double t_end = 1.0;

  ComplexAmplitude operator()(double x, double y) const { return eval(x, y); }
};

/// Closed-form kernel function for a quadratic Lagrangian over [t0, t1].
KernelFunction oracle_kernel_function(const LagrangianSpec& lagrangian, double h, double t0, double t1);

/// (left o right)(x, y) = integral of left(x, z) right(z, y) exp(-eta z^2) dz,
/// extrapolated eta -> 0. The integration window is quad_window joined with
/// the damping window [-6/sqrt(eta), 6/sqrt(eta)].
KernelFunction compose_kernels(KernelFunction left, KernelFunction right, double mid_time,
                               const Interval& quad_window, const RegularizationParams& reg);

/// Lattice Schwinger-Dyson expectation of dS/dx_site under the kernel
/// weight, with the kernel normalization, extrapolated eta -> 0.
ComplexAmplitude ehrenfest_residual(const KernelSpec& spec, const LatticeConfig& config, int site,
                                    const RegularizationParams& reg);

/// The same expectation at one damping strength.
ComplexAmplitude ehrenfest_residual_damped(const KernelSpec& spec, const LatticeConfig& config, int site,
                                           double eta, std::size_t step_budget);

/// |K| sqrt(h |H_site,site|) at the classical path: the typical size of
/// dS/dx_site under the kernel weight, against which the residual is judged.
double ehrenfest_gradient_scale(const KernelSpec& spec, const LatticeConfig& config, int site,
                                const RegularizationParams& reg);

}  // namespace pathlab
