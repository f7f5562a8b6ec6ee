#pragma once

#include <optional>
#include <vector>

#include "pathlab/extrapolation.hpp"
#include "pathlab/propagator.hpp"

namespace pathlab {

/// bare: independent epsilon and eps' (exponent eps' S_n / epsilon);
/// renormalized: fixed quantum scale h; dressed: scale epsilon'' = mu h.
enum class SeriesKind { Bare, Renormalized, Dressed };

/// Bipartition ladder: level k has n_k = (n_0 + 1) 2^k - 1 interior points,
/// so eps'_k = eps'_0 / 2^k exactly.
struct ControlLadder {
  SeriesKind kind = SeriesKind::Renormalized;
  LatticeConfig base_config;
  int levels = 2;
  /// Quantum scale; replaces the KernelSpec's h.
  double h = 1.0;
  /// Bare series only: epsilon at level 0, halved each level. 0 means h * eps'_0.
  double epsilon0 = 0.0;
  /// Dressed series only: epsilon'' = mu * h.
  double mu = 1.0;

  int interior_count(int level) const;
  LatticeConfig level_config(int level) const;
  /// eps'_0 / 2^k, computed as (t1 - t0) / ((n_0 + 1) 2^k).
  double eps_prime(int level) const;
  void validate() const;
};

/// Kernel at every level, with parameters eps'_k. Levels use the closed form
/// for quadratic actions and direct quadrature (reg) for quartic ones, which
/// limits quartic ladders to n_k <= 3.
ExtrapolationLadder run_ladder(const ControlLadder& ladder, const KernelSpec& spec,
                               const RegularizationParams& reg = {});

/// Exact kernels on an explicit interior-count list. Parameters are T / n,
/// which halve exactly when the counts double.
ExtrapolationLadder run_count_ladder(const KernelSpec& spec, const LatticeConfig& config,
                                     const std::vector<int>& counts);

/// eps' = T / (n + 1) for each count.
std::vector<double> slice_widths(const LatticeConfig& config, const std::vector<int>& counts);

struct InvarianceEntry {
  double mu = 1.0;
  ComplexAmplitude scaled_h;      // kernel at scale mu h
  ComplexAmplitude scaled_action; // kernel of S / mu at scale h
  double deviation = 0.0;         // relative
  double modulus_ratio = 1.0;     // |K(mu h)| / |K(h)|
  bool passed = false;
};

struct InvarianceReport {
  std::vector<InvarianceEntry> entries;
  double max_deviation = 0.0;
  double tolerance = 1e-15;
  bool passed = true;
};

/// For each mu compares dressed_kernel (scale mu h) with the kernel of the
/// rescaled action S / mu at scale h. Failures are report entries.
InvarianceReport verify_dressed_invariance(const KernelSpec& spec, const LatticeConfig& config,
                                           const std::vector<double>& mu_list);

struct LevelError {
  double parameter = 0.0;
  ComplexAmplitude value;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

struct ConvergenceReport {
  std::vector<LevelError> levels;
  /// Empty when every error is at rounding level (flat ladder).
  std::optional<double> order;
  ComplexAmplitude limit;
  double limit_error = 0.0;
  int richardson_order = 1;
  bool converged = false;
};

/// Per-level errors against `reference`, the estimated order, the Richardson
/// limit (order = the rounded estimate, at least 1) and the converged flag:
/// errors strictly decreasing and the limit's error below 10x the last raw
/// error. A ladder whose relative errors are all <= 1e-12 counts as converged
/// with undefined order.
///
/// `order_parameters`, when given, replaces the ladder parameters in the order
/// estimate only (e.g. eps' for a ladder extrapolated in T / n).
ConvergenceReport convergence_report(const ExtrapolationLadder& ladder, ComplexAmplitude reference,
                                     const std::vector<double>& order_parameters = {});

}  // namespace pathlab
