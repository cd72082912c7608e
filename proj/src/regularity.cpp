#include "twz/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "twz/errors.hpp"
#include "twz/sampling.hpp"

namespace twz {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::continuous: return "continuous";
    case Verdict::jump: return "jump";
    case Verdict::divergent: return "divergent";
  }
  return "unknown";
}

int MonomialSpec::s_l() const {
  int s = -l[0];
  for (int i = 1; i < 6; ++i) s += l[i];
  return s;
}

int MonomialSpec::k() const { return std::min(m, m + s_l()); }

namespace {

RJet f_l(const std::array<int, 6>& l, const JetPoint& x) {
  RJet f = pow(radial_r(x), -l[0]);
  for (int i = 0; i < 5; ++i)
    if (l[i + 1] > 0) f *= pow(x[i], l[i + 1]);
  return f;
}

bool on_l(const JetPoint& x) {
  const RegionTag t = classify(values(x), 1.0).tag;
  return t == RegionTag::L_interior || t == RegionTag::L_boundary;
}

Point combine(const Point& base, const Point& dir, double h) {
  Point p;
  for (int i = 0; i < 5; ++i) p[i] = base[i] + h * dir[i];
  return p;
}

double gap_sign(const Point& p) { return radius(p) - std::abs(p[0]); }

}  // namespace

ProbeField monomial_field(const MonomialSpec& spec) {
  return [spec](const JetPoint& x) -> std::vector<RJet> {
    if (on_l(x)) return {RJet(0.0)};
    return {pow(radial_ro(x), spec.m) * f_l(spec.l, x)};
  };
}

ProbeField ro2_field() {
  return [](const JetPoint& x) -> std::vector<RJet> { return {ro_squared(x)}; };
}

ProbeField ga_field(double a) {
  return [a](const JetPoint& x) {
    const JetMatrix g = metric_components({Family::Ga, a}, x);
    std::vector<RJet> out;
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) out.push_back(g(i, j));
    return out;
  };
}

ProbeField ga_component(int i, int j, double a) {
  return [i, j, a](const JetPoint& x) -> std::vector<RJet> {
    return {metric_components({Family::Ga, a}, x)(i, j)};
  };
}

Point CrossingCurve::plus(double h) const { return combine(base, dir_plus, h); }
Point CrossingCurve::minus(double h) const { return combine(base, dir_minus, h); }

CrossingCurve crossing_curve(const Point& base, const Point& direction, double h0,
                             int levels) {
  const double r = radius(base);
  if (std::abs(base[0]) == 0.0 || std::abs(r - std::abs(base[0])) > 1e-12 * (1.0 + r))
    throw NonTransversalError("base point is not on L_o away from the origin");
  const double sp = gap_sign(combine(base, direction, h0));
  const double sm = gap_sign(combine(base, direction, -h0));
  const double sp_min = gap_sign(combine(base, direction, h0 * std::pow(0.5, levels)));
  const double sm_min = gap_sign(combine(base, direction, -h0 * std::pow(0.5, levels)));
  if (!(sp * sm < 0.0) || !(sp_min * sm_min < 0.0) || !(sp * sp_min > 0.0))
    throw NonTransversalError("curve does not cross L_o transversally");
  CrossingCurve c;
  c.base = base;
  c.h0 = h0;
  c.levels = levels;
  Point neg;
  for (int i = 0; i < 5; ++i) neg[i] = -direction[i];
  c.dir_plus = sp > 0.0 ? direction : neg;
  c.dir_minus = sp > 0.0 ? neg : direction;
  return c;
}

CrossingCurve origin_curve(const Point& dir_b, const Point& dir_l, double h0, int levels) {
  if (!(gap_sign(dir_b) > 0.0) || !(gap_sign(dir_l) < 0.0))
    throw NonTransversalError("origin rays must point into B and into L");
  CrossingCurve c;
  c.base = Point{};
  c.dir_plus = dir_b;
  c.dir_minus = dir_l;
  c.h0 = h0;
  c.levels = levels;
  return c;
}

int ProbeResult::smoothness_class() const {
  for (int o = 0; o <= max_order; ++o)
    if (verdict[o] != Verdict::continuous) return o - 1;
  return max_order;
}

Verdict classify_gaps(const std::vector<double>& g, double scale) {
  const size_t n = g.size();
  if (n < 4) throw ConfigError("need at least four gap levels");
  const double last = g[n - 1];
  if (last <= 1e-10 * (1.0 + scale)) return Verdict::continuous;
  bool grows = true;
  for (size_t i = n - 3; i < n; ++i) grows = grows && g[i] > 1.5 * g[i - 1];
  if (grows) return Verdict::divergent;
  bool flat = true;
  for (size_t i = n - 3; i < n; ++i) flat = flat && std::abs(g[i] / last - 1.0) <= 0.05;
  if (flat) return Verdict::jump;
  // Neither rule fired: use the log-slope over the last four levels.
  const double slope = std::log2(g[n - 4] / last) / 3.0;  // gap ~ h^slope
  if (slope > 0.5) return Verdict::continuous;
  if (slope < -0.5) return Verdict::divergent;
  return Verdict::jump;
}

ProbeResult smoothness_probe(const ProbeField& field, const CrossingCurve& curve,
                             int max_order) {
  if (max_order < 0 || max_order > kMaxOrder) throw OrderError("probe order out of range");
  ProbeResult res;
  res.max_order = max_order;
  std::array<double, 4> scale{};
  for (int k = 0; k < curve.levels; ++k) {
    const double h = curve.h0 * std::pow(0.5, k);
    const std::vector<RJet> fp = field(seed(curve.plus(h), max_order));
    const std::vector<RJet> fm = field(seed(curve.minus(h), max_order));
    if (fp.size() != fm.size()) throw DimensionError("field changes size across the curve");
    std::array<double, 4> gap{};
    for (size_t c = 0; c < fp.size(); ++c) {
      auto upd = [&](int o, double vp, double vm) {
        gap[o] = std::max(gap[o], std::abs(vp - vm));
        scale[o] = std::max({scale[o], std::abs(vp), std::abs(vm)});
      };
      upd(0, fp[c].value(), fm[c].value());
      for (int i = 0; i < kVars && max_order >= 1; ++i) upd(1, fp[c].d(i), fm[c].d(i));
      if (max_order >= 2)
        for (const auto& pr : detail::kTables.pairs)
          upd(2, fp[c].d(pr[0], pr[1]), fm[c].d(pr[0], pr[1]));
      if (max_order >= 3)
        for (const auto& t : detail::kTables.triples)
          upd(3, fp[c].d(t[0], t[1], t[2]), fm[c].d(t[0], t[1], t[2]));
    }
    for (int o = 0; o <= max_order; ++o) res.gaps[o].push_back(gap[o]);
  }
  for (int o = 0; o <= max_order; ++o) res.verdict[o] = classify_gaps(res.gaps[o], scale[o]);
  return res;
}

double boundedness_probe(const MonomialSpec& spec, double t, double a, int samples,
                         unsigned long long rng_seed) {
  Exclusions ex;
  ex.cone = 0.0;
  ex.axis = 0.0;
  ex.ro_margin = 1.0;
  SampleOptions opt;
  opt.box = t;
  opt.max_r = t;
  double sup = 0.0;
  for (const Point& p : sample(SampleRegion::B_a, a, samples, rng_seed, ex, opt))
    sup = std::max(sup, std::abs(f_l(spec.l, seed(p, 0)).value()));
  return sup;
}

}  // namespace twz
