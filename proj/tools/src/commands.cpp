#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "pathlab/cli/run.hpp"
#include "pathlab/propagator.hpp"
#include "pathlab/rg_control.hpp"
#include "pathlab/stationary_delta.hpp"

namespace pathlab::cli {
namespace {

using Params = std::vector<std::pair<std::string, double>>;
using Extras = std::vector<std::pair<std::string, std::optional<double>>>;

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs `fill`; a module error marks the row failed instead of aborting.
void guarded(SweepRecord& row, const std::string& op, const std::function<void()>& fill) {
  try {
    fill();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw;
    row.status = std::string(to_string(e.code()));
    std::cerr << "pathlab " << op << " [" << row.label;
    for (const auto& [name, v] : row.params) std::cerr << ' ' << name << '=' << short_number(v);
    std::cerr << "]: " << e.what() << '\n';
  }
}

SweepRecord make_row(std::string label, Params params, ComplexAmplitude value,
                     std::optional<ComplexAmplitude> reference) {
  SweepRecord r;
  r.label = std::move(label);
  r.params = std::move(params);
  r.value = value;
  r.reference = reference;
  return r;
}

bool halving(const std::vector<double>& p) {
  if (p.size() < 2) return false;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double r = p[i] / p[i - 1];
    if (r < 0.495 || r > 0.505) return false;
  }
  return true;
}

bool all_ok(const std::vector<SweepRecord>& rows) {
  for (const auto& r : rows) {
    if (r.failed()) return false;
  }
  return true;
}

ExtrapolationLadder ladder_of(const std::vector<SweepRecord>& rows, const std::vector<double>& params) {
  ExtrapolationLadder l;
  for (std::size_t i = 0; i < rows.size(); ++i) l.push(params[i], rows[i].value);
  return l;
}

std::optional<double> order_or_none(const ExtrapolationLadder& l, ComplexAmplitude ref) {
  try {
    return estimate_convergence_order(l, ref);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroError) return std::nullopt;
    throw;
  }
}

std::vector<double> decreasing_positive(const std::string& text, const std::string& what) {
  auto v = parse_real_list(text, what);
  for (std::size_t i = 0; i < v.size(); ++i) {
    require(v[i] > 0.0, what + " entries must be > 0");
    if (i > 0) require(v[i] < v[i - 1], what + " must strictly decrease");
  }
  return v;
}

RegularizationParams make_reg(const ExperimentConfig& c) {
  RegularizationParams reg;
  reg.eta_ladder = decreasing_positive(c.eta_ladder, "eta-ladder");
  reg.step_budget = static_cast<std::size_t>(c.step_budget);
  reg.validate();
  return reg;
}

LagrangianSpec make_lagrangian(const ExperimentConfig& c) {
  LagrangianSpec l;
  if (c.lagrangian == "free") {
    l = LagrangianSpec::free(c.mass);
    require(c.omega == 0.0 && c.lambda == 0.0, "free lagrangian takes no omega or lambda");
  } else if (c.lagrangian == "harmonic") {
    l = LagrangianSpec::harmonic(c.mass, c.omega);
    require(c.lambda == 0.0, "harmonic lagrangian takes no lambda");
  } else if (c.lagrangian == "quartic") {
    l = LagrangianSpec::quartic(c.mass, c.omega, c.lambda);
  } else {
    require(false, "unknown lagrangian '" + c.lagrangian + "'");
  }
  l.validate();
  return l;
}

KernelSpec make_spec(const ExperimentConfig& c) {
  KernelSpec s{make_lagrangian(c), c.h, c.normalization == "paper" ? Normalization::Paper : Normalization::Exact};
  require(c.normalization == "paper" || c.normalization == "exact", "normalization must be paper or exact");
  s.validate();
  return s;
}

LatticeConfig make_config(const ExperimentConfig& c, int n) {
  LatticeConfig l{c.phi0, c.phi1, c.t0, c.t0 + c.t, n};
  l.validate();
  return l;
}

std::optional<ComplexAmplitude> closed_form_kernel(const LagrangianSpec& l, double h, double phi0, double phi1,
                                                   double T) {
  if (l.kind == LagrangianKind::Quartic) return std::nullopt;
  return oracle_harmonic_kernel(l.mass, l.omega, h, phi0, phi1, T);
}

std::optional<double> continuum_action(const LagrangianSpec& l, double phi0, double phi1, double T) {
  if (l.kind == LagrangianKind::Quartic) return std::nullopt;
  if (l.omega == 0.0) return 0.5 * l.mass * (phi1 - phi0) * (phi1 - phi0) / T;
  const double s = std::sin(l.omega * T);
  if (std::abs(s) <= 1e-6) return std::nullopt;
  return l.mass * l.omega / (2.0 * s) * ((phi0 * phi0 + phi1 * phi1) * std::cos(l.omega * T) - 2.0 * phi0 * phi1);
}

std::string limit_summary(const SweepRecord& row) {
  std::string s = "limit " + short_number(row.value.real()) + (row.value.imag() < 0 ? "" : "+") +
                  short_number(row.value.imag()) + "i";
  if (row.reference) {
    const double scale = row.error_scale ? *row.error_scale : std::abs(*row.reference);
    const double err = std::abs(row.value - *row.reference);
    s += ", rel err " + short_number(scale > 0.0 ? err / scale : err);
  }
  if (row.order) s += ", order " + short_number(*row.order);
  return s;
}

// ---------------------------------------------------------------------------

ExperimentResult static_delta(const ExperimentConfig& c) {
  const ScalarObjective objective = ScalarObjective::polynomial(parse_real_list(c.poly, "poly"));
  Observable g = Observable::constant(1.0), o = Observable::constant(1.0);
  if (c.observable == "gaussian") {
    g = Observable::gaussian(c.gauss_width);
    o = Observable::gaussian(0.5 * c.gauss_width);
  } else if (c.observable == "zero") {
    g = o = Observable::zero();
  }
  const auto eps = decreasing_positive(c.eps_ladder, "eps-ladder");
  const RegularizationParams reg = make_reg(c);
  const std::string op = "static-delta";

  ComplexAmplitude reference;
  std::optional<CriticalPoint> point;
  const auto points = find_critical_points(objective, reg.search_window, reg.seeds);
  if (c.quantity == "halved") {
    if (points.size() != 1) {
      throw Error(ErrorCode::MultipleCriticalPoints, "halved form needs exactly one critical point, found " +
                                                         std::to_string(points.size()));
    }
    point = points.front();
    reference = std::sqrt(2.0 * std::numbers::pi / std::abs(point->second_derivative)) * o(point->location) *
                std::polar(1.0, std::copysign(std::numbers::pi / 4.0, point->second_derivative));
  } else {
    reference = critical_point_oracle(objective, g, reg.search_window, reg.seeds);
  }

  ExperimentResult out;
  for (double e : eps) {
    SweepRecord row = make_row("level", {{"epsilon", e}}, {}, reference);
    guarded(row, op, [&] {
      if (c.quantity == "pairing") {
        row.value = delta_pairing(objective, o, e, reg);
      } else if (c.quantity == "direct") {
        row.value = classical_delta_direct(objective, g, e, reg);
      } else {
        const double f_star = objective.f(point->location);
        row.value = halved_delta(objective, o, e, reg) *
                    std::polar(1.0, -std::fmod(f_star / e, 2.0 * std::numbers::pi));
      }
    });
    out.records.push_back(row);
  }

  if (halving(eps) && all_ok(out.records)) {
    const auto ladder = ladder_of(out.records, eps);
    SweepRecord row = make_row("extrapolated", {{"epsilon", 0.0}}, richardson_extrapolate(ladder, 1), reference);
    row.order = order_or_none(ladder, reference);
    out.summary = c.quantity + " " + limit_summary(row) + " (oracle " + short_number(reference.real()) + ")";
    out.records.push_back(row);
  } else {
    out.summary = c.quantity + " over " + std::to_string(eps.size()) + " levels, no extrapolation";
  }
  return out;
}

// ---------------------------------------------------------------------------

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

ExperimentResult lattice(const ExperimentConfig& c) {
  const LagrangianSpec lag = make_lagrangian(c);
  const auto ns = parse_int_list(c.n_ladder, "n-ladder");
  for (int n : ns) require(n >= 1, "n-ladder entries must be >= 1");
  const std::optional<double> cont = continuum_action(lag, c.phi0, c.phi1, c.t);
  const std::optional<ComplexAmplitude> reference =
      cont ? std::optional<ComplexAmplitude>(ComplexAmplitude(*cont, 0.0)) : std::nullopt;
  const Extras no_extras{{"grad_fd_rel", std::nullopt}, {"hess_fd_rel", std::nullopt}};
  const std::string op = "lattice";

  ExperimentResult out;
  std::vector<double> eps;
  for (int n : ns) {
    const LatticeConfig config = make_config(c, n);
    eps.push_back(config.eps_prime());
    SweepRecord row = make_row("level", {{"n", n}, {"eps_prime", config.eps_prime()}}, {}, reference);
    row.extras = no_extras;
    guarded(row, op, [&] { row.value = discrete_action(lag, classical_path_solve(lag, config)); });
    out.records.push_back(row);
  }
  out.summary = "classical action over " + std::to_string(ns.size()) + " levels";
  if (halving(eps) && all_ok(out.records)) {
    const auto ladder = ladder_of(out.records, eps);
    SweepRecord row = make_row("extrapolated", {{"n", 0}, {"eps_prime", 0.0}}, richardson_extrapolate(ladder, 1), reference);
    row.extras = no_extras;
    if (reference) row.order = order_or_none(ladder, *reference);
    out.summary = "classical action " + limit_summary(row);
    out.records.push_back(row);
  } else if (reference && all_ok(out.records) && ns.size() >= 2) {
    const auto ladder = ladder_of(out.records, eps);
    try {
      out.summary += ", order " + short_number(estimate_convergence_order(ladder, *reference));
    } catch (const Error&) {
    }
  }

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  const LatticeConfig config = make_config(c, ns.front());
  double worst = 0.0;
  for (int r = 0; r < c.random_paths; ++r) {
    LatticePath path = LatticePath::straight_line(config);
    for (double& x : path.interior) x += jitter(rng);
    SweepRecord row = make_row("random-path", {{"n", config.n}, {"eps_prime", config.eps_prime()}}, {}, std::nullopt);
    guarded(row, op, [&] {
      row.value = discrete_action(lag, path);
      const auto grad = action_gradient(lag, path);
      const auto hess = hessian_tridiagonal(lag, path);
      const double step = 1e-5;
      double grad_err = 0.0, hess_err = 0.0, hess_scale = max_abs(hess.diag);
      for (std::size_t k = 0; k < path.interior.size(); ++k) {
        LatticePath up = path, down = path;
        up.interior[k] += step;
        down.interior[k] -= step;
        const double fd = (discrete_action(lag, up) - discrete_action(lag, down)) / (2.0 * step);
        grad_err = std::max(grad_err, std::abs(fd - grad[k]));
        const auto gu = action_gradient(lag, up), gd = action_gradient(lag, down);
        for (std::size_t j = 0; j < path.interior.size(); ++j) {
          const double fd2 = (gu[j] - gd[j]) / (2.0 * step);
          const double exact = j == k ? hess.diag[k] : (j + 1 == k || k + 1 == j) ? hess.offdiag[std::min(j, k)] : 0.0;
          hess_err = std::max(hess_err, std::abs(fd2 - exact));
        }
      }
      const double grad_rel = grad_err / std::max(max_abs(grad), 1e-300);
      const double hess_rel = hess_err / std::max(hess_scale, 1e-300);
      worst = std::max({worst, grad_rel, hess_rel});
      row.extras = {{"grad_fd_rel", grad_rel}, {"hess_fd_rel", hess_rel}};
    });
    if (row.extras.empty()) row.extras = no_extras;
    out.records.push_back(row);
  }
  if (c.random_paths > 0) out.summary += "; worst derivative check " + short_number(worst);
  return out;
}

// ---------------------------------------------------------------------------

ExperimentResult propagate(const ExperimentConfig& c) {
  const KernelSpec spec = make_spec(c);
  const auto ns = parse_int_list(c.n_ladder, "n-ladder");
  for (int n : ns) require(n >= 0, "n-ladder entries must be >= 0");
  const bool quadrature = c.method == "quadrature";
  const RegularizationParams reg = make_reg(c);
  const std::string op = "propagate";

  ExperimentResult out;
  std::optional<ComplexAmplitude> reference;
  SweepRecord probe;
  guarded(probe, op, [&] { reference = closed_form_kernel(spec.lagrangian, spec.h, c.phi0, c.phi1, c.t); });

  std::vector<double> per_n, eps;
  for (int n : ns) {
    const LatticeConfig config = make_config(c, n);
    per_n.push_back(n > 0 ? c.t / n : 0.0);
    eps.push_back(config.eps_prime());
    SweepRecord row = make_row("level", {{"n", n}, {"eps_prime", config.eps_prime()}}, {}, reference);
    row.extras = {{"norm_ratio_re", std::nullopt}, {"norm_ratio_im", std::nullopt}};
    guarded(row, op, [&] {
      row.value = quadrature ? lattice_kernel_quadrature(spec, config, reg).value : lattice_kernel_exact(spec, config).value;
      const ComplexAmplitude ratio = normalization_ratio(spec, config);
      row.extras = {{"norm_ratio_re", ratio.real()}, {"norm_ratio_im", ratio.imag()}};
    });
    out.records.push_back(row);
  }

  const std::vector<double>* params = halving(per_n) ? &per_n : halving(eps) ? &eps : nullptr;
  out.summary = "kernel over " + std::to_string(ns.size()) + " levels";
  if (params != nullptr && all_ok(out.records)) {
    const auto ladder = ladder_of(out.records, *params);
    SweepRecord row = make_row("extrapolated", {{"n", 0}, {"eps_prime", 0.0}}, {}, reference);
    row.extras = {{"norm_ratio_re", std::nullopt}, {"norm_ratio_im", std::nullopt}};
    if (reference) {
      const ConvergenceReport rep = convergence_report(ladder, *reference, eps);
      row.value = rep.limit;
      row.order = rep.order;
      out.summary = limit_summary(row) + ", converged " + (rep.converged ? "yes" : "no");
    } else {
      row.value = richardson_extrapolate(ladder, 1);
      out.summary = limit_summary(row);
    }
    out.records.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentResult compose(const ExperimentConfig& c) {
  const LagrangianSpec lag = make_lagrangian(c);
  const RegularizationParams reg = make_reg(c);
  const auto w = parse_real_list(c.window, "window");
  require(w.size() == 2 && w[0] < w[1], "window must be lo,hi with lo < hi");
  const Interval window{w[0], w[1]};
  const std::string op = "compose";

  const bool short_time = c.short_time > 0.0;
  const double mid = short_time ? c.t0 + c.t : c.t0 + 0.5 * c.t;
  const double end = short_time ? c.t0 + c.t + c.short_time : c.t0 + c.t;
  const KernelFunction left = oracle_kernel_function(lag, c.h, c.t0, mid);
  const KernelFunction right = oracle_kernel_function(lag, c.h, mid, end);
  const ComplexAmplitude reference = *closed_form_kernel(lag, c.h, c.phi0, c.phi1, c.t);

  ExperimentResult out;
  for (double eta : reg.eta_ladder) {
    RegularizationParams one = reg;
    one.eta_ladder = {eta};
    SweepRecord row = make_row("level", {{"eta", eta}}, {}, reference);
    guarded(row, op, [&] { row.value = compose_kernels(left, right, mid, window, one)(c.phi0, c.phi1); });
    out.records.push_back(row);
  }
  out.summary = "composition over " + std::to_string(reg.eta_ladder.size()) + " damping levels";
  if (halving(reg.eta_ladder) && all_ok(out.records)) {
    const auto ladder = ladder_of(out.records, reg.eta_ladder);
    SweepRecord row = make_row("extrapolated", {{"eta", 0.0}}, richardson_extrapolate(ladder, reg.richardson_order), reference);
    out.summary = "composition " + limit_summary(row);
    out.records.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentResult ehrenfest(const ExperimentConfig& c) {
  const KernelSpec spec = make_spec(c);
  const RegularizationParams reg = make_reg(c);
  const LatticeConfig config = make_config(c, c.n);
  require(c.site >= 1 && c.site <= c.n, "site must satisfy 1 <= site <= n");
  const std::string op = "ehrenfest";

  ExperimentResult out;
  std::optional<double> scale;
  SweepRecord probe;
  guarded(probe, op, [&] { scale = ehrenfest_gradient_scale(spec, config, c.site, reg); });
  if (probe.failed()) throw Error(ErrorCode::Overflow, "gradient scale unavailable: " + probe.status);

  for (double eta : reg.eta_ladder) {
    SweepRecord row = make_row("level", {{"eta", eta}}, {}, ComplexAmplitude(0.0, 0.0));
    row.error_scale = scale;
    row.extras = {{"gradient_scale", scale}};
    guarded(row, op, [&] { row.value = ehrenfest_residual_damped(spec, config, c.site, eta, reg.step_budget); });
    out.records.push_back(row);
  }
  out.summary = "residual over " + std::to_string(reg.eta_ladder.size()) + " damping levels";
  if (halving(reg.eta_ladder) && all_ok(out.records)) {
    const auto ladder = ladder_of(out.records, reg.eta_ladder);
    SweepRecord row = make_row("extrapolated", {{"eta", 0.0}}, richardson_extrapolate(ladder, reg.richardson_order),
                    ComplexAmplitude(0.0, 0.0));
    row.error_scale = scale;
    row.extras = {{"gradient_scale", scale}};
    out.summary = "residual |R| / scale " + short_number(std::abs(row.value) / *scale);
    out.records.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentResult sweep(const ExperimentConfig& c) {
  const auto values = parse_real_list(c.values, "values");
  const bool quadrature = c.method == "quadrature";
  const std::string op = "sweep";

  std::vector<ExperimentConfig> points;
  for (double v : values) {
    ExperimentConfig p = c;
    if (c.sweep_param == "t") p.t = v;
    else if (c.sweep_param == "omega") p.omega = v;
    else if (c.sweep_param == "phi1") p.phi1 = v;
    else p.h = v;
    require(p.t > 0.0 && p.h > 0.0 && p.omega >= 0.0, "sweep value out of range for " + c.sweep_param);
    make_spec(p);
    make_config(p, p.n);
    points.push_back(p);
  }
  const RegularizationParams reg = make_reg(c);

  ExperimentResult out;
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ExperimentConfig& p = points[i];
    SweepRecord row = make_row("point", {{c.sweep_param, values[i]}, {"n", p.n}}, {}, std::nullopt);
    guarded(row, op, [&] {
      const KernelSpec spec = make_spec(p);
      const LatticeConfig config = make_config(p, p.n);
      row.reference = closed_form_kernel(spec.lagrangian, spec.h, p.phi0, p.phi1, p.t);
      row.value = quadrature ? lattice_kernel_quadrature(spec, config, reg).value : lattice_kernel_exact(spec, config).value;
      if (row.reference) worst = std::max(worst, relative_error(row.value, *row.reference));
    });
    out.records.push_back(row);
  }
  out.summary = "worst rel err vs closed form " + short_number(worst);
  return out;
}

// ---------------------------------------------------------------------------

ExperimentResult invariance(const ExperimentConfig& c) {
  const KernelSpec spec = make_spec(c);
  const LatticeConfig config = make_config(c, c.n);
  const auto mus = parse_real_list(c.mu_list, "mu-list");
  for (double mu : mus) require(mu > 0.0, "mu-list entries must be > 0");

  const InvarianceReport report = verify_dressed_invariance(spec, config, mus);
  const auto base = closed_form_kernel(spec.lagrangian, spec.h, c.phi0, c.phi1, c.t);
  ExperimentResult out;
  for (const InvarianceEntry& e : report.entries) {
    SweepRecord row = make_row("mu", {{"mu", e.mu}}, e.scaled_h, e.scaled_action);
    row.error_scale = std::abs(e.scaled_h);
    std::optional<double> oracle_ratio;
    if (base) {
      oracle_ratio = std::abs(*closed_form_kernel(spec.lagrangian, spec.h * e.mu, c.phi0, c.phi1, c.t)) / std::abs(*base);
    }
    row.extras = {{"modulus_ratio", e.modulus_ratio}, {"oracle_modulus_ratio", oracle_ratio},
                  {"passed", e.passed ? 1.0 : 0.0}};
    out.records.push_back(row);
  }
  out.check_failed = !report.passed;
  out.summary = "max deviation " + short_number(report.max_deviation) + (report.passed ? " (pass)" : " (FAIL)");
  return out;
}

}  // namespace

ExperimentResult execute(const ExperimentConfig& config) {
  require(std::isfinite(config.t) && config.t > 0.0, "t must be > 0");
  require(std::isfinite(config.h) && config.h > 0.0, "h must be > 0");
  switch (config.command) {
    case Command::StaticDelta: return static_delta(config);
    case Command::Lattice: return lattice(config);
    case Command::Propagate: return propagate(config);
    case Command::Compose: return compose(config);
    case Command::Ehrenfest: return ehrenfest(config);
    case Command::Sweep: return sweep(config);
    case Command::Invariance: return invariance(config);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command");
}

}  // namespace pathlab::cli
