#pragma once

// Check records and their byte-stable JSON / CSV serialization.

#include <map>
#include <string>
#include <vector>

namespace twz {

struct CheckRecord {
  std::string name;
  std::string claim;
  int samples = 0;
  double residual_max = 0.0;
  double residual_median = 0.0;
  double tol = 0.0;
  bool pass = false;
  double wall_ms = 0.0;  // serialized only when timings are requested
  std::string note;

  bool operator==(const CheckRecord&) const = default;
};

struct Report {
  std::vector<CheckRecord> checks;
  std::map<std::string, std::string> meta;

  bool all_pass() const;
  const CheckRecord* find(const std::string& name) const;
  bool operator==(const Report&) const = default;
};

enum class ReportFormat { json, csv };

ReportFormat parse_format(const std::string& s);

/// Sorted keys, 17 significant digits, non-finite numbers as null.
std::string to_json(const Report& r, bool timings = false);
/// Header check,name,residual_max,residual_median,tol,verdict.
std::string to_csv(const Report& r);
/// Inverse of to_json; throws ConfigError on malformed input.
Report parse_json(const std::string& text);

/// Throws IoError when the file cannot be written.
void emit_report(const Report& r, const std::string& path, ReportFormat format,
                 bool timings = false);

/// %.17g with '.' as the decimal separator, independent of the locale.
std::string format_double(double v);

}  // namespace twz
