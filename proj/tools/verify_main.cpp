// Command-line front end: run the check suite, probe smoothness classes,
// print tensor components.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twz/curvature.hpp"
#include "twz/errors.hpp"
#include "twz/regularity.hpp"
#include "twz/report.hpp"
#include "twz/suite.hpp"

namespace {

using namespace twz;

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_list(s)) {
    if (v != static_cast<int>(v) || v < 0) throw ConfigError("expected nonnegative integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

MetricSpec parse_spec(const std::string& s, double a) {
  if (s == "g0") return {Family::Minkowski, a};
  if (s == "ga") return {Family::Ga, a};
  if (s == "gatilde") return {Family::GaTilde, a};
  if (s == "ha") return {Family::Ha, a};
  if (s == "eh") return {Family::EguchiHanson, a};
  throw ConfigError("unknown metric '" + s + "'");
}

// monomial:m,lr,l0,l1,l2,l3,l4
ProbeField parse_field(const std::string& s, double a) {
  if (s == "ga") return ga_field(a);
  if (s == "ro2") return ro2_field();
  const std::string prefix = "monomial:";
  if (s.rfind(prefix, 0) == 0) {
    const std::vector<int> v = parse_ints(s.substr(prefix.size()));
    if (v.size() != 7 || v[0] < 1) throw ConfigError("monomial needs m,lr,l0,l1,l2,l3,l4 with m >= 1");
    MonomialSpec spec;
    spec.m = v[0];
    for (int i = 0; i < 6; ++i) spec.l[i] = v[i + 1];
    return monomial_field(spec);
  }
  throw ConfigError("unknown field '" + s + "'");
}

void print_matrix(const Eigen::MatrixXd& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) std::cout << (j ? " " : "") << format_double(m(i, j));
    std::cout << '\n';
  }
}

void print_tensor(const Tensor4& t, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (t(i, j, k, l) != 0.0)
            std::cout << i << ' ' << j << ' ' << k << ' ' << l << ' ' << format_double(t(i, j, k, l))
                      << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of twistor spinors on the metrics g_a"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run the check suite");
  std::string config_path;
  double a = 1.0, exclude = 1e-3, perturb = 0.0;
  int samples = 300, threads = 0;
  std::uint64_t seed = 1;
  double b = 1.0, c = 0.0;
  std::vector<std::string> tol_overrides, only;
  std::string report_path, format = "json";
  bool timings = false, list = false;
  run->add_option("--config", config_path, "JSON config file; flags override it");
  run->add_option("--a", a, "metric parameter a > 0");
  run->add_option("--samples", samples, "samples per check");
  run->add_option("--seed", seed, "64-bit seed");
  run->add_option("--b", b, "spinor parameter b");
  run->add_option("--c", c, "spinor parameter c");
  run->add_option("--tol-override", tol_overrides, "CHECK=TOL")->take_all();
  run->add_option("--exclude", exclude, "exclusion half-width around L_o and the axis");
  run->add_option("--report", report_path, "write the report to this path");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--perturb", perturb, "add perturb * dx1 dx2 to g_a in the twistor checks");
  run->add_option("--threads", threads, "worker threads (0: hardware)");
  run->add_option("--only", only, "run only these checks")->take_all();
  run->add_flag("--timings", timings, "include wall times in the JSON report");
  run->add_flag("--list", list, "list the checks and exit");

  // probe-c1
  auto* probe = app.add_subcommand("probe-c1", "smoothness class across L_o");
  std::string field = "ga";
  int curves = 10;
  double probe_a = 1.0;
  std::uint64_t probe_seed = 1;
  probe->add_option("--field", field, "ga | ro2 | monomial:m,lr,l0,l1,l2,l3,l4");
  probe->add_option("--curves", curves, "number of transversal curves")->check(CLI::PositiveNumber);
  probe->add_option("--a", probe_a, "metric parameter a");
  probe->add_option("--seed", probe_seed, "seed for curve placement");

  // tensor
  auto* tensor = app.add_subcommand("tensor", "print tensor components at a point");
  std::string spec_name = "ga", point_str, what = "metric";
  double tensor_a = 1.0;
  tensor->add_option("--spec", spec_name, "g0 | ga | gatilde | ha | eh");
  tensor->add_option("--point", point_str, "x0,x1,x2,x3,x4")->required();
  tensor->add_option("--what", what, "metric | ricci | weyl | christoffel")
      ->check(CLI::IsMember({"metric", "ricci", "weyl", "christoffel"}));
  tensor->add_option("--a", tensor_a, "metric parameter a");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (list) {
        for (const auto& info : list_checks())
          std::cout << info.name << ' ' << info.claim << ' ' << format_double(info.tol) << '\n';
        return 0;
      }
      SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : load_config(config_path);
      if (run->count("--a")) cfg.a = a;
      if (run->count("--samples")) cfg.samples = samples;
      if (run->count("--seed")) cfg.seed = seed;
      if (run->count("--b")) cfg.b = b;
      if (run->count("--c")) cfg.c = c;
      if (run->count("--exclude")) cfg.exclude = exclude;
      if (run->count("--report")) cfg.report_path = report_path;
      if (run->count("--format")) cfg.format = format;
      if (run->count("--perturb")) cfg.perturb = perturb;
      if (run->count("--threads")) cfg.threads = threads;
      if (run->count("--only")) cfg.only = only;
      if (timings) cfg.timings = true;
      for (const auto& kv : tol_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("expected CHECK=TOL, got '" + kv + "'");
        cfg.tol_override[kv.substr(0, eq)] = parse_list(kv.substr(eq + 1)).at(0);
      }
      const Report rep = run_suite(cfg);
      for (const auto& ch : rep.checks)
        std::printf("%-34s %-4s max %-12.3e tol %.1e%s%s\n", ch.name.c_str(), ch.pass ? "ok" : "FAIL",
                    ch.residual_max, ch.tol, ch.note.empty() ? "" : "  ", ch.note.c_str());
      std::printf("overall: %s\n", rep.all_pass() ? "pass" : "fail");
      if (!cfg.report_path.empty()) emit_report(rep, cfg.report_path, parse_format(cfg.format), cfg.timings);
      return rep.all_pass() ? 0 : 1;
    }

    if (*probe) {
      const ProbeField f = parse_field(field, probe_a);
      std::mt19937_64 rng(probe_seed);
      std::normal_distribution<double> nd;
      std::uniform_real_distribution<double> ud(0.2, 0.6);
      int done = 0;
      while (done < curves) {
        Point dir4{}, dir{};
        double n4 = 0.0;
        for (int i = 0; i < 4; ++i) n4 += (dir4[i] = nd(rng)) * dir4[i];
        const double t = ud(rng) / probe_a;
        const double sign = done % 2 ? 1.0 : -1.0;
        const Point base{sign * t, t * dir4[0] / std::sqrt(n4), t * dir4[1] / std::sqrt(n4),
                         t * dir4[2] / std::sqrt(n4), t * dir4[3] / std::sqrt(n4)};
        for (auto& v : dir) v = nd(rng);
        CrossingCurve cc;
        try {
          cc = crossing_curve(base, dir, 0.05 / probe_a);
        } catch (const NonTransversalError&) {
          continue;
        }
        const ProbeResult r = smoothness_probe(f, cc);
        std::cout << "curve " << done << " class C^" << r.smoothness_class() << ':';
        for (int o = 0; o <= r.max_order; ++o) std::cout << ' ' << o << '=' << to_string(r.verdict[o]);
        std::cout << '\n';
        ++done;
      }
      return 0;
    }

    if (*tensor) {
      const std::vector<double> pv = parse_list(point_str);
      if (pv.size() != 5) throw ConfigError("--point needs five coordinates");
      const Point p{pv[0], pv[1], pv[2], pv[3], pv[4]};
      const MetricSpec spec = parse_spec(spec_name, tensor_a);
      if (what == "metric") {
        print_matrix(metric_components(spec, p).values());
      } else if (what == "christoffel") {
        const LocalGeometry geo = local_geometry(spec, p);
        for (int k = 0; k < geo.dim(); ++k)
          for (int i = 0; i < geo.dim(); ++i)
            for (int j = i; j < geo.dim(); ++j)
              if (geo.gamma.g[k][i][j].value() != 0.0)
                std::cout << k << ' ' << i << ' ' << j << ' ' << format_double(geo.gamma.g[k][i][j].value())
                          << '\n';
      } else {
        const CurvatureBundle cb = curvature(spec, p);
        if (what == "ricci")
          print_matrix(cb.ricci);
        else
          print_tensor(cb.weyl, cb.dim);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
