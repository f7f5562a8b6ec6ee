#include "pathlab/cli/run.hpp"

#include <iostream>

#include "pathlab/error.hpp"

namespace pathlab::cli {

int run(const ExperimentConfig& config) {
  const std::string op = command_name(config.command);
  ExperimentResult result;
  try {
    result = execute(config);
  } catch (const Error& e) {
    std::cerr << "pathlab " << op << ": " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidArgument ? kExitValidation : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "pathlab " << op << ": unexpected failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  try {
    emit_csv(result.records, config.output_path(), config.echo());
  } catch (const Error& e) {
    std::cerr << "pathlab " << op << ": " << e.what() << '\n';
    return kExitNumerical;
  }

  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.failed() ? 1 : 0;
  std::cout << op << ": " << result.records.size() << " rows -> " << config.output_path() << "; "
            << result.summary;
  if (failed > 0) std::cout << "; " << failed << " failed rows";
  std::cout << '\n';
  return failed > 0 || result.check_failed ? kExitNumerical : kExitOk;
}

int main_entry(int argc, const char* const* argv) {
  const ParseOutcome parsed = parse_command_line(argc, argv);
  if (parsed.exit_code >= 0) return parsed.exit_code;
  return run(parsed.config);
}

}  // namespace pathlab::cli
