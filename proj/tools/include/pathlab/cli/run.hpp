#pragma once

#include <string>
#include <vector>

#include "pathlab/cli/config.hpp"
#include "pathlab/cli/csv.hpp"

namespace pathlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Rows of one experiment plus its one-line summary.
struct ExperimentResult {
  std::vector<SweepRecord> records;
  std::string summary;
  /// Set when the experiment ran but its built-in check did not hold.
  bool check_failed = false;
};

/// Computes the rows of an experiment without writing anything. Module
/// errors inside a row mark that row failed; InvalidArgument propagates.
ExperimentResult execute(const ExperimentConfig& config);

/// Runs the experiment, writes the CSV (with the config echo) and prints the
/// summary. Returns 0, 2 (validation, nothing written) or 3 (numerical).
int run(const ExperimentConfig& config);

/// Entry point for the executable.
int main_entry(int argc, const char* const* argv);

}  // namespace pathlab::cli
