#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "twz/errors.hpp"
#include "twz/sampling.hpp"
#include "twz/suite.hpp"

namespace twz {
namespace {

double r_of(const Point& p) { return std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3] + p[4] * p[4]); }

TEST(Sampling, RadicalInverse) {
  EXPECT_DOUBLE_EQ(radical_inverse(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(radical_inverse(3, 2), 0.75);
  EXPECT_DOUBLE_EQ(radical_inverse(1, 3), 1.0 / 3);
  EXPECT_DOUBLE_EQ(radical_inverse(5, 3), 7.0 / 9);
}

TEST(Sampling, DeterministicPerSeed) {
  const auto p1 = sample(SampleRegion::Closure, 1.0, 100, 42);
  const auto p2 = sample(SampleRegion::Closure, 1.0, 100, 42);
  const auto p3 = sample(SampleRegion::Closure, 1.0, 100, 43);
  EXPECT_EQ(p1, p2);
  EXPECT_NE(p1, p3);
}

TEST(Sampling, RegionsAndExclusions) {
  for (double a : {0.5, 1.0, 2.0}) {
    for (const Point& p : sample(SampleRegion::B_a, a, 200, 1)) {
      const double r = r_of(p);
      EXPECT_GT(r, std::abs(p[0]));
      EXPECT_GE(std::abs(r - std::abs(p[0])) / std::sqrt(2.0), 1e-3);
      EXPECT_GE(r, 1e-3);
      EXPECT_LE(a * (r * r - p[0] * p[0]) / r, 0.95 + 1e-12);
    }
    for (const Point& p : sample(SampleRegion::L_interior, a, 200, 1)) EXPECT_LT(r_of(p), std::abs(p[0]));
  }
  SampleOptions opt;
  opt.max_r = 0.5;
  for (const Point& p : sample(SampleRegion::B_a, 1.0, 50, 1, {}, opt)) EXPECT_LE(r_of(p), 0.5);
}

TEST(Sampling, EmptyRegion) {
  Exclusions ex;
  ex.cone = 10.0;
  EXPECT_THROW(sample(SampleRegion::B_a, 1.0, 10, 1, ex), EmptyRegionError);
}

Report small_report() {
  Report r;
  r.meta["a"] = "1";
  r.meta["seed"] = "7";
  CheckRecord c;
  c.name = "x.one";
  c.claim = "demo";
  c.samples = 3;
  c.residual_max = 1.25e-11;
  c.residual_median = 0.1;
  c.tol = 1e-9;
  c.pass = true;
  c.note = "quote \" and comma ,";
  r.checks.push_back(c);
  c.name = "x.two";
  c.pass = false;
  c.residual_max = INFINITY;
  c.note.clear();
  r.checks.push_back(c);
  return r;
}

TEST(Report, JsonRoundTrip) {
  Report r = small_report();
  const Report back = parse_json(to_json(r));
  ASSERT_EQ(back.checks.size(), 2u);
  EXPECT_EQ(back.checks[0], r.checks[0]);
  EXPECT_EQ(back.meta, r.meta);
  EXPECT_TRUE(std::isinf(back.checks[1].residual_max) || std::isnan(back.checks[1].residual_max));
  EXPECT_FALSE(back.all_pass());
  EXPECT_EQ(to_json(r), to_json(r));
  EXPECT_THROW(parse_json("{not json"), ConfigError);
}

TEST(Report, EmptyReport) {
  const Report r;
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(parse_json(to_json(r)).checks.size(), 0u);
}

TEST(Report, Csv) {
  const std::string csv = to_csv(small_report());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "check,name,residual_max,residual_median,tol,verdict");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 2);
  EXPECT_NE(csv.find(",pass\n"), std::string::npos);
  EXPECT_NE(csv.find(",fail\n"), std::string::npos);
}

TEST(Report, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  EXPECT_EQ(parse_format("csv"), ReportFormat::csv);
}

TEST(Report, EmitToUnwritablePath) {
  EXPECT_THROW(emit_report(small_report(), "/nonexistent-dir/x/report.json", ReportFormat::json), IoError);
  const auto path = std::filesystem::temp_directory_path() / "twz_report_test.json";
  emit_report(small_report(), path.string(), ReportFormat::json);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().substr(0, 1), "{");
  std::filesystem::remove(path);
}

TEST(Config, Validation) {
  SuiteConfig c;
  EXPECT_NO_THROW(c.validate());
  c.a = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.samples = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.exclude = 0.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.tol_override["no.such.check"] = 1e-3;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.tol_override["frame.e_orthonormal"] = -1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.only = {"bogus"};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SuiteConfig{};
  c.format = "yaml";
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, ApplyJson) {
  SuiteConfig c;
  apply_config_json(c, R"({"a": 2, "samples": 40, "seed": 9, "b": [0.5, 1], "c": 2,
                           "tol_override": {"frame.e_orthonormal": 1e-6}, "only": ["signature.ga"]})");
  EXPECT_EQ(c.a, 2.0);
  EXPECT_EQ(c.samples, 40);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.b, std::complex<double>(0.5, 1));
  EXPECT_EQ(c.c, std::complex<double>(2, 0));
  EXPECT_EQ(c.tol_override.at("frame.e_orthonormal"), 1e-6);
  EXPECT_EQ(c.only.size(), 1u);
  EXPECT_THROW(apply_config_json(c, R"({"colour": 1})"), ConfigError);
  EXPECT_THROW(apply_config_json(c, "[1, 2]"), ConfigError);
}

TEST(Suite, ChecksAreListedOnce) {
  std::set<std::string> names;
  for (const auto& ci : list_checks()) {
    EXPECT_TRUE(names.insert(ci.name).second) << ci.name;
    EXPECT_GT(ci.tol, 0.0);
  }
  EXPECT_GE(names.size(), 40u);
}

SuiteConfig quick() {
  SuiteConfig c;
  c.samples = 30;
  c.only = {"frame.e_orthonormal", "twistor.psi_bc_ba", "square.psi_bc", "length.u_bc"};
  return c;
}

TEST(Suite, DeterministicAcrossThreadCounts) {
  SuiteConfig c1 = quick(), c4 = quick();
  c1.threads = 1;
  c4.threads = 4;
  const Report r1 = run_suite(c1), r4 = run_suite(c4);
  EXPECT_EQ(to_json(r1), to_json(r4));
  EXPECT_TRUE(r1.all_pass());
}

TEST(Suite, ChecksAreIndependentOfSelection) {
  SuiteConfig all = quick();
  SuiteConfig one = quick();
  one.only = {"square.psi_bc"};
  const Report ra = run_suite(all), ro = run_suite(one);
  ASSERT_EQ(ro.checks.size(), 1u);
  CheckRecord x = *ra.find("square.psi_bc"), y = ro.checks[0];
  x.wall_ms = y.wall_ms = 0.0;
  EXPECT_EQ(x, y);
}

TEST(Suite, PerturbationBreaksTheTwistorCheck) {
  SuiteConfig c = quick();
  c.only = {"twistor.psi_bc_ba"};
  c.perturb = 1e-3;
  const Report r = run_suite(c);
  EXPECT_FALSE(r.checks.at(0).pass);
}

TEST(Suite, ToleranceOverrideApplies) {
  SuiteConfig c = quick();
  c.only = {"length.u_bc"};
  c.tol_override["length.u_bc"] = 1e-30;
  const Report r = run_suite(c);
  EXPECT_EQ(r.checks.at(0).tol, 1e-30);
}

}  // namespace
}  // namespace twz
