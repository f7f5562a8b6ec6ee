#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathlab/amplitude.hpp"

namespace pathlab::cli {

/// One output row. Every record of a file must carry the same parameter and
/// extra column names in the same order.
struct SweepRecord {
  std::string label;
  std::vector<std::pair<std::string, double>> params;
  ComplexAmplitude value;
  std::optional<ComplexAmplitude> reference;
  /// Divides abs_err to give rel_err; defaults to |reference|.
  std::optional<double> error_scale;
  std::optional<double> order;
  std::vector<std::pair<std::string, std::optional<double>>> extras;
  /// "ok", or the error code of a failed row (numeric fields left empty).
  std::string status = "ok";

  bool failed() const { return status != "ok"; }
};

/// %.17g; non-finite values are written as empty fields.
std::string format_number(double v);

/// Header plus one line per record, preceded by `comments` as '#' lines.
std::string render_csv(const std::vector<SweepRecord>& records, const std::vector<std::string>& comments = {});

/// Writes render_csv to `path`. Throws IoFailure.
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path,
              const std::vector<std::string>& comments = {});

}  // namespace pathlab::cli
