#pragma once

// The verification suite: every identity of the construction bound to a
// sampled, toleranced check.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twz/report.hpp"

namespace twz {

struct SuiteConfig {
  double a = 1.0;
  int samples = 300;
  std::uint64_t seed = 1;
  std::map<std::string, double> tol_override;
  double exclude = 1e-3;  // half-width of the bands around L_o and the axis
  std::complex<double> b = 1.0;
  std::complex<double> c = 0.0;
  std::string report_path;
  std::string format = "json";
  /// Negative control: adds perturb * dx1 dx2 to g_a in the twistor checks.
  double perturb = 0.0;
  /// 0 means hardware concurrency; VERIFY_THREADS caps either way.
  int threads = 0;
  bool timings = false;
  /// Run only these checks (all when empty).
  std::vector<std::string> only;

  /// Throws ConfigError.
  void validate() const;
};

struct CheckInfo {
  std::string name;
  std::string claim;
  double tol = 0.0;
};

const std::vector<CheckInfo>& list_checks();

int effective_threads(const SuiteConfig& cfg);

Report run_suite(const SuiteConfig& cfg);

/// Loads a JSON config; keys mirror the CLI flags (a, samples, seed, b, c,
/// tol_override, exclude, report, format, perturb, threads, timings, only).
SuiteConfig load_config(const std::string& path);
void apply_config_json(SuiteConfig& cfg, const std::string& json_text);

}  // namespace twz
