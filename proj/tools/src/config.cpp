#include "pathlab/cli/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <iostream>
#include <map>

#include "pathlab/cli/csv.hpp"
#include "pathlab/error.hpp"

namespace pathlab::cli {
namespace {

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table = {
      {"static-delta", Command::StaticDelta}, {"lattice", Command::Lattice},
      {"propagate", Command::Propagate},      {"compose", Command::Compose},
      {"ehrenfest", Command::Ehrenfest},      {"sweep", Command::Sweep},
      {"invariance", Command::Invariance}};
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else if (c != '"' && c != '[' && c != ']') {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, value] : command_table()) {
    if (value == c) return name;
  }
  return "unknown";
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const std::string& p : split(text)) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    require(!p.empty() && ec == std::errc() && end == p.data() + p.size() && std::isfinite(v),
            what + ": '" + p + "' is not a finite number");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const std::string& p : split(text)) {
    int v = 0;
    const auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    require(!p.empty() && ec == std::errc() && end == p.data() + p.size(), what + ": '" + p + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

std::string ExperimentConfig::output_path() const {
  return out.empty() ? command_name(command) + ".csv" : out;
}

std::vector<std::string> ExperimentConfig::echo() const {
  auto num = [](double v) { return format_number(v); };
  return {
      "command = " + command_name(command),
      "out = " + quoted(output_path()),
      "eta-ladder = " + quoted(eta_ladder),
      "normalization = " + normalization,
      "h = " + num(h),
      "seed = " + std::to_string(seed),
      "step-budget = " + std::to_string(step_budget),
      "poly = " + quoted(poly),
      "observable = " + observable,
      "gauss-width = " + num(gauss_width),
      "eps-ladder = " + quoted(eps_ladder),
      "quantity = " + quantity,
      "lagrangian = " + lagrangian,
      "mass = " + num(mass),
      "omega = " + num(omega),
      "lambda = " + num(lambda),
      "phi0 = " + num(phi0),
      "phi1 = " + num(phi1),
      "t0 = " + num(t0),
      "t = " + num(t),
      "n = " + std::to_string(n),
      "n-ladder = " + quoted(n_ladder),
      "method = " + method,
      "site = " + std::to_string(site),
      "window = " + quoted(window),
      "short-time = " + num(short_time),
      "mu-list = " + quoted(mu_list),
      "sweep-param = " + sweep_param,
      "values = " + quoted(values),
      "random-paths = " + std::to_string(random_paths),
  };
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  ParseOutcome outcome;
  ExperimentConfig& c = outcome.config;

  CLI::App app{"pathlab: stationary-phase and time-sliced path integral experiments", "pathlab"};
  // "--h" is the quantum scale, so help keeps only its long form.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Flat key = value file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(0, 1);

  std::string command_key;
  app.add_option("--command", command_key, "Experiment (alternative to the subcommand)")
      ->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (const auto& [name, _] : command_table()) names.push_back(name);
        return names;
      }()));

  app.add_option("--out", c.out, "CSV output path (default <command>.csv)");
  app.add_option("--eta-ladder", c.eta_ladder, "Damping strengths, each half the previous");
  app.add_option("--normalization", c.normalization, "Kernel prefactor")->check(CLI::IsMember({"paper", "exact"}));
  app.add_option("--h", c.h, "Quantum scale h")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed for random test paths");
  app.add_option("--step-budget", c.step_budget, "Node budget per quadrature")->check(CLI::Range(16.0, 1e9));

  app.add_option("--poly", c.poly, "Objective coefficients, constant first (degree <= 6)");
  app.add_option("--observable", c.observable, "Test function g")->check(CLI::IsMember({"one", "gaussian", "zero"}));
  app.add_option("--gauss-width", c.gauss_width, "a in g(x) = exp(-a x^2)")->check(CLI::PositiveNumber);
  app.add_option("--eps-ladder", c.eps_ladder, "Static scales epsilon, each half the previous");
  app.add_option("--quantity", c.quantity, "What static-delta reports")
      ->check(CLI::IsMember({"pairing", "halved", "direct"}));

  app.add_option("--lagrangian", c.lagrangian, "Lagrangian family")
      ->check(CLI::IsMember({"free", "harmonic", "quartic"}));
  app.add_option("--mass", c.mass, "Mass m")->check(CLI::PositiveNumber);
  app.add_option("--omega", c.omega, "Angular frequency")->check(CLI::NonNegativeNumber);
  app.add_option("--lambda", c.lambda, "Quartic coupling");
  app.add_option("--phi0", c.phi0, "Left boundary value");
  app.add_option("--phi1", c.phi1, "Right boundary value");
  app.add_option("--t0", c.t0, "Start time");
  app.add_option("--t", c.t, "Duration T = t1 - t0")->check(CLI::PositiveNumber);
  app.add_option("--n", c.n, "Interior point count")->check(CLI::NonNegativeNumber);
  app.add_option("--n-ladder", c.n_ladder, "Interior point counts");
  app.add_option("--method", c.method, "Kernel evaluation")->check(CLI::IsMember({"exact", "quadrature"}));
  app.add_option("--site", c.site, "Interior site for the Schwinger-Dyson residual")->check(CLI::PositiveNumber);
  app.add_option("--window", c.window, "Composition window lo,hi");
  app.add_option("--short-time", c.short_time, "Compose with a kernel of this duration instead of halving")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--mu-list", c.mu_list, "Scale factors mu");
  app.add_option("--sweep-param", c.sweep_param, "Swept parameter")
      ->check(CLI::IsMember({"t", "omega", "phi1", "h"}));
  app.add_option("--values", c.values, "Values of the swept parameter");
  app.add_option("--random-paths", c.random_paths, "Random paths for derivative checks")
      ->check(CLI::Range(0, 10000));

  for (const auto& [name, _] : command_table()) {
    app.add_subcommand(name, "Run the " + name + " experiment")->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = app.exit(e) == 0 ? 0 : 2;
    return outcome;
  }

  const auto subs = app.get_subcommands();
  if (!subs.empty()) {
    command_key = subs.front()->get_name();
  }
  if (command_key.empty()) {
    std::cerr << "pathlab: no experiment given (use a subcommand or command = ... in --config)\n";
    outcome.exit_code = 2;
    return outcome;
  }
  c.command = command_table().at(command_key);
  return outcome;
}

}  // namespace pathlab::cli
