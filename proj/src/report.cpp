#include "twz/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "twz/errors.hpp"

namespace twz {

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckRecord* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + s + "'");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

double number_or_nan(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

std::string to_json(const Report& r, bool timings) {
  std::ostringstream o;
  o << "{\n  \"checks\": [";
  for (size_t i = 0; i < r.checks.size(); ++i) {
    const CheckRecord& c = r.checks[i];
    o << (i ? ",\n" : "\n") << "    {";
    o << "\"claim\": " << quote(c.claim);
    o << ", \"name\": " << quote(c.name);
    o << ", \"note\": " << quote(c.note);
    o << ", \"residual_max\": " << format_double(c.residual_max);
    o << ", \"residual_median\": " << format_double(c.residual_median);
    o << ", \"samples\": " << c.samples;
    o << ", \"tol\": " << format_double(c.tol);
    o << ", \"verdict\": " << quote(c.pass ? "pass" : "fail");
    if (timings) o << ", \"wall_ms\": " << format_double(c.wall_ms);
    o << "}";
  }
  o << (r.checks.empty() ? "],\n" : "\n  ],\n");
  o << "  \"meta\": {";
  size_t n = 0;
  for (const auto& [k, v] : r.meta) o << (n++ ? ", " : "") << quote(k) << ": " << quote(v);
  o << "},\n";
  o << "  \"overall\": " << quote(r.all_pass() ? "pass" : "fail") << "\n}\n";
  return o.str();
}

std::string to_csv(const Report& r) {
  std::ostringstream o;
  o << "check,name,residual_max,residual_median,tol,verdict\n";
  for (size_t i = 0; i < r.checks.size(); ++i) {
    const CheckRecord& c = r.checks[i];
    o << csv_field(c.claim) << ',' << csv_field(c.name) << ',' << format_double(c.residual_max)
      << ',' << format_double(c.residual_median) << ',' << format_double(c.tol) << ','
      << (c.pass ? "pass" : "fail") << '\n';
  }
  return o.str();
}

Report parse_json(const std::string& text) {
  Report r;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.claim = c.at("claim").get<std::string>();
      rec.name = c.at("name").get<std::string>();
      rec.note = c.value("note", std::string());
      rec.residual_max = number_or_nan(c.at("residual_max"));
      rec.residual_median = number_or_nan(c.at("residual_median"));
      rec.samples = c.at("samples").get<int>();
      rec.tol = number_or_nan(c.at("tol"));
      rec.pass = c.at("verdict").get<std::string>() == "pass";
      if (c.contains("wall_ms")) rec.wall_ms = number_or_nan(c.at("wall_ms"));
      r.checks.push_back(rec);
    }
    for (const auto& [k, v] : j.at("meta").items()) r.meta[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return r;
}

void emit_report(const Report& r, const std::string& path, ReportFormat format, bool timings) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << (format == ReportFormat::json ? to_json(r, timings) : to_csv(r));
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace twz
