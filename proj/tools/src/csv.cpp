#include "pathlab/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pathlab::cli {
namespace {

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void check_columns(const std::vector<SweepRecord>& records) {
  require(!records.empty(), "emit_csv: no records");
  const SweepRecord& first = records.front();
  for (const SweepRecord& r : records) {
    require(r.params.size() == first.params.size() && r.extras.size() == first.extras.size(),
            "emit_csv: records have different column sets");
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      require(r.params[i].first == first.params[i].first, "emit_csv: parameter columns differ");
    }
    for (std::size_t i = 0; i < r.extras.size(); ++i) {
      require(r.extras[i].first == first.extras[i].first, "emit_csv: extra columns differ");
    }
  }
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const std::vector<SweepRecord>& records, const std::vector<std::string>& comments) {
  check_columns(records);
  std::ostringstream out;
  for (const std::string& c : comments) out << "# " << c << '\n';

  out << "label";
  for (const auto& [name, _] : records.front().params) out << ',' << name;
  out << ",re,im,modulus,phase,ref_re,ref_im,abs_err,rel_err,order";
  for (const auto& [name, _] : records.front().extras) out << ',' << name;
  out << ",status\n";

  for (const SweepRecord& r : records) {
    out << r.label;
    for (const auto& [_, v] : r.params) out << ',' << format_number(v);
    if (r.failed()) {
      out << ",,,,,,,,,";
    } else {
      out << ',' << format_number(r.value.real()) << ',' << format_number(r.value.imag()) << ','
          << format_number(std::abs(r.value)) << ',' << format_number(std::arg(r.value));
      if (r.reference) {
        const double abs_err = std::abs(r.value - *r.reference);
        const double scale = r.error_scale ? *r.error_scale : std::abs(*r.reference);
        out << ',' << format_number(r.reference->real()) << ',' << format_number(r.reference->imag()) << ','
            << format_number(abs_err) << ',' << (scale > 0.0 ? format_number(abs_err / scale) : std::string());
      } else {
        out << ",,,,";
      }
      out << ',' << optional_number(r.order);
    }
    for (const auto& [_, v] : r.extras) out << ',' << (r.failed() ? std::string() : optional_number(v));
    out << ',' << r.status << '\n';
  }
  return out.str();
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path,
              const std::vector<std::string>& comments) {
  const std::string text = render_csv(records, comments);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw Error(ErrorCode::IoFailure, "failed writing '" + path + "'");
}

}  // namespace pathlab::cli
