#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pathlab::cli {

enum class Command { StaticDelta, Lattice, Propagate, Compose, Ehrenfest, Sweep, Invariance };

std::string command_name(Command c);

/// Everything one run needs. Lists are kept as entered; they are parsed and
/// range-checked by validate().
struct ExperimentConfig {
  Command command = Command::Propagate;
  std::string out;
  std::string eta_ladder = "0.5,0.25,0.125,0.0625,0.03125";
  std::string normalization = "exact";
  double h = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t step_budget = std::uint64_t{1} << 24;

  // static-delta
  std::string poly = "0,0,0.5";
  std::string observable = "one";
  double gauss_width = 1.0;
  std::string eps_ladder = "0.02,0.01,0.005";
  std::string quantity = "pairing";

  // lattice problems
  std::string lagrangian = "free";
  double mass = 1.0;
  double omega = 0.0;
  double lambda = 0.0;
  double phi0 = 0.0;
  double phi1 = 1.0;
  double t0 = 0.0;
  double t = 1.0;
  int n = 1;
  std::string n_ladder = "8,16,32,64";
  std::string method = "exact";
  int site = 1;
  std::string window = "-5,5";
  double short_time = 0.0;
  std::string mu_list = "0.1,0.5,2,10";
  std::string sweep_param = "t";
  std::string values = "0.5,1,1.5";
  int random_paths = 0;

  /// `key = value` lines that --config reads back to this configuration.
  std::vector<std::string> echo() const;
  /// Output path, defaulting to "<command>.csv".
  std::string output_path() const;
};

/// Result of parsing a command line.
struct ParseOutcome {
  ExperimentConfig config;
  /// -1 to run; otherwise the process exit status (help, or a parse error).
  int exit_code = -1;
};

/// Subcommand plus flags, optionally with `--config FILE` (flat key = value,
/// unknown keys rejected). Flags override the file.
ParseOutcome parse_command_line(int argc, const char* const* argv);

std::vector<double> parse_real_list(const std::string& text, const std::string& what);
std::vector<int> parse_int_list(const std::string& text, const std::string& what);

}  // namespace pathlab::cli
