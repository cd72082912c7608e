#include "twz/geometry.hpp"

#include <cmath>

namespace twz {

namespace {

RJet sum_sq(const JetPoint& x, int from) {
  RJet s(0.0);
  for (int i = from; i < kVars; ++i) s += x[i] * x[i];
  return s;
}

// r^2 - x0^2 as a jet.
RJet gap_jet(const JetPoint& x) { return sum_sq(x, 1) - x[0] * x[0]; }

enum class Side { inside, boundary, outside };

Side cone_side(const Point& p) {
  const double r = radius(p);
  const double t = std::abs(p[0]);
  if (r < t) return Side::inside;
  if (r == t) return Side::boundary;
  return Side::outside;
}

RJet truncated(RJet f, int order) { return f.truncate(order); }

JetMatrix truncated(JetMatrix g, int order) {
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) g(i, j).truncate(order);
  return g;
}

// Coefficients of r^2 sigma_i in dx1..dx4 (index 0 is dx0).
std::array<VecJ, 3> sigma_numerators(const JetPoint& x) {
  const RJet z(0.0);
  return {{{z, -x[2], x[1], -x[4], x[3]},
           {z, -x[3], x[4], x[1], -x[2]},
           {z, -x[4], -x[3], x[2], x[1]}}};
}

}  // namespace

std::string to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::L_interior: return "L_interior";
    case RegionTag::L_boundary: return "L_boundary";
    case RegionTag::B_a: return "B_a";
    case RegionTag::OutsideClosure: return "OutsideClosure";
  }
  return "unknown";
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Minkowski: return "g0";
    case Family::Ga: return "ga";
    case Family::GaTilde: return "gatilde";
    case Family::Ha: return "ha";
    case Family::EguchiHanson: return "eh";
  }
  return "unknown";
}

double radius(const Point& p) {
  return std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3] + p[4] * p[4]);
}

double cone_gap(const Point& p) {
  const double r = radius(p);
  return r * r - p[0] * p[0];
}

double ro_value(const Point& p) {
  const double r = radius(p);
  if (r <= std::abs(p[0])) return 0.0;
  return cone_gap(p) / r;
}

Region classify(const Point& p, double a) {
  Region reg;
  const double r = radius(p);
  reg.on_axis_r0 = r == 0.0;
  reg.at_origin = reg.on_axis_r0 && p[0] == 0.0;
  switch (cone_side(p)) {
    case Side::inside: reg.tag = RegionTag::L_interior; break;
    case Side::boundary: reg.tag = RegionTag::L_boundary; break;
    case Side::outside:
      reg.tag = ro_value(p) * a < 1.0 ? RegionTag::B_a : RegionTag::OutsideClosure;
      break;
  }
  return reg;
}

Eigen::MatrixXd JetMatrix::values() const {
  Eigen::MatrixXd v(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) v(i, j) = m[i][j].value();
  return v;
}

int JetMatrix::order() const {
  int o = kMaxOrder;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) o = std::min(o, m[i][j].order());
  return o;
}

JetMatrix JetMatrix::zero(int dim) {
  JetMatrix z;
  z.dim = dim;
  return z;
}

JetMatrix JetMatrix::identity(int dim) {
  JetMatrix z = zero(dim);
  for (int i = 0; i < dim; ++i) z(i, i) = RJet(1.0);
  return z;
}

JetMatrix JetMatrix::minkowski() {
  JetMatrix z = identity(5);
  z(0, 0) = RJet(-1.0);
  return z;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  JetMatrix c = JetMatrix::zero(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      RJet s(0.0);
      for (int k = 0; k < a.dim; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

JetMatrix transpose(const JetMatrix& a) {
  JetMatrix t = JetMatrix::zero(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) t(i, j) = a(j, i);
  return t;
}

JetMatrix inverse(const JetMatrix& g) {
  const int n = g.dim;
  JetMatrix a = g;
  JetMatrix out = JetMatrix::identity(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(g(i, j).value()));
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a(i, col).value()) > std::abs(a(piv, col).value())) piv = i;
    if (!(std::abs(a(piv, col).value()) > 1e-14 * scale))
      throw SingularMetricError("matrix is not invertible at this point");
    std::swap(a.m[col], a.m[piv]);
    std::swap(out.m[col], out.m[piv]);
    const RJet p = inv(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * p;
      out(col, j) = out(col, j) * p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const RJet f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        out(i, j) -= f * out(col, j);
      }
    }
  }
  return out;
}

VecJ apply(const JetMatrix& m, const VecJ& v) {
  VecJ r;
  for (int i = 0; i < m.dim; ++i) {
    RJet s(0.0);
    for (int j = 0; j < m.dim; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

VecJ scale(const VecJ& v, const RJet& s) {
  VecJ r;
  for (int i = 0; i < kVars; ++i) r[i] = v[i] * s;
  return r;
}

VecJ add(const VecJ& v, const VecJ& w) {
  VecJ r;
  for (int i = 0; i < kVars; ++i) r[i] = v[i] + w[i];
  return r;
}

RJet pair(const VecJ& covector, const VecJ& vector) {
  RJet s(0.0);
  for (int i = 0; i < kVars; ++i) s += covector[i] * vector[i];
  return s;
}

RJet bilinear(const JetMatrix& g, const VecJ& x, const VecJ& y) {
  RJet s(0.0);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) s += g(i, j) * x[i] * y[j];
  return s;
}

JetMatrix sym_product(const VecJ& v, const VecJ& w) {
  JetMatrix r = JetMatrix::zero(5);
  for (int i = 0; i < kVars; ++i)
    for (int j = i; j < kVars; ++j) {
      r(i, j) = (v[i] * w[j] + w[i] * v[j]) * 0.5;
      r(j, i) = r(i, j);
    }
  return r;
}

RJet radial_r(const JetPoint& x) {
  if (radius(values(x)) == 0.0) throw DomainError("r = 0 on the axis");
  return sqrt(sum_sq(x, 1));
}

RJet radial_ro(const JetPoint& x) {
  switch (cone_side(values(x))) {
    case Side::inside: return RJet(0.0);
    case Side::boundary: throw AmbiguousError("r_o has one-sided partials on L_o");
    case Side::outside: break;
  }
  return gap_jet(x) / radial_r(x);
}

RJet ro_squared(const JetPoint& x) {
  switch (cone_side(values(x))) {
    case Side::inside: return RJet(0.0);
    case Side::boundary: return truncated(RJet(0.0), 1);
    case Side::outside: break;
  }
  const RJet d = gap_jet(x);
  return d * d / sum_sq(x, 1);
}

RJet beta(const JetPoint& x, double a) {
  const RJet ro2 = ro_squared(x);
  const double a4 = std::pow(a, 4);
  const RJet arg = 1.0 - a4 * ro2 * ro2;
  if (!(arg.value() > 0.0)) throw DomainError("beta needs a r_o < 1");
  if (ro2.value() == 0.0 && ro2.order() == kMaxOrder) return RJet(1.0);
  return sqrt(arg);
}

RJet mu(const JetPoint& x) {
  const RJet d = gap_jet(x);
  if (d.value() == 0.0) throw SingularError("mu is singular on L_o");
  return log(d.value() > 0.0 ? d : -d);
}

RJet coord_s(const JetPoint& x) {
  const RJet d = gap_jet(x);
  if (d.value() == 0.0) throw SingularError("s is singular on L_o");
  return -x[0] / d;
}

RJet coord_R(const JetPoint& x) {
  const RJet d = gap_jet(x);
  if (d.value() == 0.0) throw SingularError("R is singular on L_o");
  return radial_r(x) / d;
}

std::array<VecJ, 3> sigma_forms(const JetPoint& x) {
  const RJet inv_r2 = inv(sum_sq(x, 1));
  auto s = sigma_numerators(x);
  for (auto& v : s) v = scale(v, inv_r2);
  return s;
}

std::array<VecJ, 3> sigma_duals(const JetPoint& x) {
  if (radius(values(x)) == 0.0) throw DomainError("sigma frame undefined at r = 0");
  return sigma_numerators(x);
}

VecJ dr_form(const JetPoint& x) {
  const RJet inv_r = inv(radial_r(x));
  return {RJet(0.0), x[1] * inv_r, x[2] * inv_r, x[3] * inv_r, x[4] * inv_r};
}

VecJ d_dr(const JetPoint& x) { return dr_form(x); }

VecJ alpha_form(const JetPoint& x) {
  const RJet r = radial_r(x);
  const RJet q = r * r + x[0] * x[0];
  VecJ al = scale(dr_form(x), q);
  al[0] = -2.0 * x[0] * r;
  return al;
}

VecJ field_T(const JetPoint& x) {
  const RJet r = radial_r(x);
  const RJet q = r * r + x[0] * x[0];
  VecJ t = scale(d_dr(x), -q);
  t[0] = -2.0 * r * x[0];
  return t;
}

VecJ field_V(const JetPoint& x) {
  // -2 x0 r d/dr = -2 x0 sum x_i d/dx_i, smooth through the axis.
  VecJ v;
  v[0] = -(sum_sq(x, 1) + x[0] * x[0]);
  for (int i = 1; i < kVars; ++i) v[i] = -2.0 * x[0] * x[i];
  return v;
}

GaParts decompose_ga(const JetPoint& x, double a) {
  GaParts parts{JetMatrix::minkowski(), JetMatrix::zero(5), JetMatrix::zero(5)};
  const Point p = values(x);
  const Region reg = classify(p, a);
  if (reg.tag == RegionTag::OutsideClosure)
    throw DomainError("g_a is defined on B_a and L only");
  if (reg.tag != RegionTag::B_a) {
    if (reg.tag == RegionTag::L_boundary) parts.g0 = truncated(parts.g0, 1);
    return parts;
  }
  const double a4 = std::pow(a, 4);
  const RJet r2 = sum_sq(x, 1);
  const RJet ro2 = ro_squared(x);
  const RJet b = beta(x, a);
  // (r sigma_3)^2 = (v3 . dx)^2 / r^2.
  const VecJ v3 = sigma_numerators(x)[2];
  parts.omega = sym_product(v3, v3);
  const RJet wf = a4 * ro2 * ro2 / r2;
  const VecJ al = alpha_form(x);
  parts.rho = sym_product(al, al);
  const RJet rf = a4 * ro2 / (b * b * r2);
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < kVars; ++j) {
      parts.omega(i, j) *= wf;
      parts.rho(i, j) *= rf;
    }
  return parts;
}

JetMatrix metric_components(const MetricSpec& spec, const JetPoint& x) {
  const Point p = values(x);
  const double a = spec.a;
  const double a4 = std::pow(a, 4);
  switch (spec.family) {
    case Family::Minkowski: return JetMatrix::minkowski();
    case Family::Ga: {
      const GaParts parts = decompose_ga(x, a);
      JetMatrix g = JetMatrix::zero(5);
      for (int i = 0; i < kVars; ++i)
        for (int j = 0; j < kVars; ++j)
          g(i, j) = parts.g0(i, j) - parts.omega(i, j) + parts.rho(i, j);
      return g;
    }
    case Family::GaTilde: {
      if (cone_side(p) == Side::boundary) throw SingularError("g~_a is singular on L_o");
      JetMatrix g = metric_components(MetricSpec{Family::Ga, a}, x);
      const RJet d = gap_jet(x);
      const RJet f = inv(d * d);
      for (int i = 0; i < kVars; ++i)
        for (int j = 0; j < kVars; ++j) g(i, j) *= f;
      return g;
    }
    case Family::Ha: {
      // dr^2/(1 - (ar)^4) + r^2 (s1^2 + s2^2 + (1 - (ar)^4) s3^2) on (x1..x4).
      const RJet r2 = sum_sq(x, 1);
      const RJet q = 1.0 - a4 * r2 * r2;
      if (!(q.value() > 0.0)) throw DomainError("h_a needs r < 1/a");
      const VecJ v3 = sigma_numerators(x)[2];
      const RJet cr = a4 * r2 / q;
      const RJet cs = a4 * r2;
      JetMatrix g = JetMatrix::identity(4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          g(i, j) += cr * x[i + 1] * x[j + 1] - cs * v3[i + 1] * v3[j + 1];
      return g;
    }
    case Family::EguchiHanson: {
      const RJet r2 = sum_sq(x, 1);
      const RJet r4 = r2 * r2;
      if (!(r4.value() > a4)) throw DomainError("g_EH needs R > a");
      const VecJ v3 = sigma_numerators(x)[2];
      const RJet cr = a4 / ((r4 - a4) * r2);
      const RJet cs = a4 / (r4 * r2);
      JetMatrix g = JetMatrix::identity(4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          g(i, j) += cr * x[i + 1] * x[j + 1] - cs * v3[i + 1] * v3[j + 1];
      return g;
    }
  }
  throw DomainError("unknown metric family");
}

JetMatrix metric_components(const MetricSpec& spec, const Point& p, int order) {
  return metric_components(spec, seed(p, order));
}

JetPoint psi_map(const JetPoint& x) {
  const RJet d = gap_jet(x);
  if (d.value() == 0.0) throw SingularError("Psi is singular on L_o");
  const RJet inv_d = inv(d);
  JetPoint y;
  y[0] = -x[0] * inv_d;
  for (int i = 1; i < kVars; ++i) y[i] = x[i] * inv_d;
  return y;
}

Point psi_map(const Point& p) { return values(psi_map(seed(p, 0))); }

JetMatrix psi_jacobian(const JetPoint& x) {
  const RJet d = gap_jet(x);
  if (d.value() == 0.0) throw SingularError("Psi is singular on L_o");
  const RJet inv_d = inv(d);
  VecJ ex = x;
  ex[0] = -x[0];
  JetMatrix j = JetMatrix::minkowski();
  for (int a = 0; a < kVars; ++a)
    for (int b = 0; b < kVars; ++b) j(a, b) = (j(a, b) - 2.0 * ex[a] * ex[b] * inv_d) * inv_d;
  return j;
}

}  // namespace twz
