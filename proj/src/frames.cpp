#include "twz/frames.hpp"

#include <cmath>

namespace twz {

namespace {

CJet cj(const RJet& f) { return CJet(f); }

VecJ unit(int i) {
  VecJ v{};
  v[i] = RJet(1.0);
  return v;
}

RJet truncated(RJet f, int order) { return f.truncate(order); }

FrameVecs truncated(FrameVecs fr, int order) {
  for (auto& v : fr)
    for (auto& c : v) c.truncate(order);
  return fr;
}

FrameVecs standard_frame() { return {unit(0), unit(1), unit(2), unit(3), unit(4)}; }

FrameVecs frame_e(const JetPoint& x, double a) {
  const Point p = values(x);
  const Region reg = classify(p, a);
  if (reg.tag == RegionTag::OutsideClosure) throw DomainError("frame e lives on B_a and L");
  if (reg.on_axis_r0) throw DomainError("frame e is singular on the axis r = 0");
  const double a4 = std::pow(a, 4);
  const RJet r = radial_r(x);
  const RJet b = beta(x, a);
  const RJet c = a4 * ro_squared(x) / (1.0 + b);
  const VecJ t = field_T(x);
  const auto xs = sigma_duals(x);
  const RJet inv_r = inv(r);
  FrameVecs e;
  e[0] = add(unit(0), scale(t, -2.0 * x[0] * c * inv_r));
  e[1] = add(d_dr(x), scale(t, (r * r + x[0] * x[0]) * c * inv_r * inv_r));
  e[2] = scale(xs[0], inv_r);
  e[3] = scale(xs[1], inv_r);
  e[4] = scale(xs[2], inv(r * b));
  return e;
}

struct PsiPolar {
  RJet s, R, beta;
  VecJ d_dR;
  std::array<VecJ, 3> duals;
};

PsiPolar psi_polar(const JetPoint& y, double a) {
  PsiPolar pp;
  pp.s = y[0];
  pp.R = radial_r(y);
  const RJet ar = a / pp.R;
  const RJet arg = 1.0 - pow(ar, 4);
  if (!(arg.value() > 0.0)) throw DomainError("Eguchi-Hanson frame needs R > a");
  pp.beta = sqrt(arg);
  pp.d_dR = d_dr(y);
  pp.duals = sigma_duals(y);
  return pp;
}

void require_ba(const JetPoint& x, double a, const char* what) {
  if (classify(values(x), a).tag != RegionTag::B_a)
    throw DomainError(std::string(what) + " is evaluated on B_a only");
}

FrameVecs to_cartesian(const FrameVecs& in_y, const JetPoint& y) {
  // x = Psi(y), so dx/dy is the Psi Jacobian at y.
  const JetMatrix k = psi_jacobian(y);
  FrameVecs out;
  for (int i = 0; i < 5; ++i) out[i] = apply(k, in_y[i]);
  return out;
}

JetMatrix g_matrix(const JetPoint& x) {
  const RJet r = radial_r(x);
  const RJet inv_r = inv(r);
  const RJet z(0.0);
  const std::array<std::array<RJet, 5>, 5> rows = {{
      {r, z, z, z, z},
      {z, x[1], x[2], x[3], x[4]},
      {z, -x[2], x[1], -x[4], x[3]},
      {z, -x[3], x[4], x[1], -x[2]},
      {z, -x[4], -x[3], x[2], x[1]},
  }};
  JetMatrix g = JetMatrix::zero(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) g(i, j) = rows[i][j] * inv_r;
  return g;
}

SpinJet gtilde(const JetPoint& x, bool inverse) {
  const RJet inv_r = inv(radial_r(x));
  const cplx I(0, 1);
  SpinJet s{};
  s[0][0] = s[1][1] = CJet(1.0);
  CJet a = (cj(x[1]) + cj(x[2]) * I) * cj(inv_r);
  CJet b = (cj(x[3]) + cj(x[4]) * I) * cj(inv_r);
  // Lower block [[a, b], [-conj b, conj a]] is in SU(2); its inverse is the adjoint.
  if (!inverse) {
    s[2][2] = a;
    s[2][3] = b;
    s[3][2] = -conj(b);
    s[3][3] = conj(a);
  } else {
    s[2][2] = conj(a);
    s[2][3] = -b;
    s[3][2] = conj(b);
    s[3][3] = a;
  }
  return s;
}

SpinJet boost_spin(const RJet& ch, const RJet& sh) {
  // cosh(t/2) + sinh(t/2) gamma_0 gamma_1.
  SpinJet s{};
  for (int i = 0; i < 4; ++i) s[i][i] = cj(ch);
  s[0][2] = s[2][0] = cj(sh);
  s[1][3] = s[3][1] = cj(-sh);
  return s;
}

SpinJet qtilde(const JetPoint& x, double a, bool inverse) {
  const BoostCoeffs bc = boost_coeffs(x, a);
  const RJet kp1 = bc.k + 1.0;
  const RJet ch = sqrt(kp1 * 0.5);
  RJet sh = -bc.q / sqrt(2.0 * kp1);
  if (inverse) sh = -sh;
  return boost_spin(ch, sh);
}

SpinJet kappatilde(const JetPoint& x, double a, bool inverse) {
  require_ba(x, a, "kappa~");
  const RJet s = coord_s(x);
  const RJet R = coord_R(x);
  const RJet n = inv(sqrt(R * R - s * s));
  return boost_spin(R * n, (inverse ? s : -s) * n);
}

JetMatrix q_matrix(const JetPoint& x, double a) {
  const BoostCoeffs bc = boost_coeffs(x, a);
  JetMatrix q = JetMatrix::identity(5);
  q(0, 0) = q(1, 1) = bc.k;
  q(0, 1) = q(1, 0) = bc.q;
  return q;
}

JetMatrix kappa_matrix(const JetPoint& x, double a) {
  require_ba(x, a, "kappa");
  const RJet s = coord_s(x);
  const RJet R = coord_R(x);
  const RJet n = inv(R * R - s * s);
  JetMatrix k = JetMatrix::identity(5);
  k(0, 0) = k(1, 1) = (s * s + R * R) * n;
  k(0, 1) = k(1, 0) = 2.0 * s * R * n;
  return k;
}

SpinJet adjoint_conj(const SpinJet& outer_inv, const SpinJet& inner, const SpinJet& outer) {
  return outer_inv * inner * outer;
}

}  // namespace

FrameVecs frame_times(const FrameVecs& frame, const JetMatrix& m) {
  FrameVecs out;
  for (int j = 0; j < 5; ++j) {
    VecJ v{};
    for (int i = 0; i < 5; ++i) v = add(v, scale(frame[i], m(i, j)));
    out[j] = v;
  }
  return out;
}

Eigen::MatrixXd gram(const FrameVecs& frame, const JetMatrix& g) {
  Eigen::MatrixXd out(5, 5);
  const Eigen::MatrixXd gv = g.values();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double s = 0.0;
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) s += gv(a, b) * frame[i][a].value() * frame[j][b].value();
      out(i, j) = s;
    }
  return out;
}

FrameVecs etilde_in_psi_coords(const JetPoint& y, double a) {
  const PsiPolar pp = psi_polar(y, a);
  const RJet& s = pp.s;
  const RJet& R = pp.R;
  const RJet n = -inv(R * R - s * s);
  const RJet q = s * s + R * R;
  const RJet m = 2.0 * s * R;
  FrameVecs e;
  e[0] = scale(add(scale(unit(0), q), scale(pp.d_dR, m * pp.beta)), n);
  e[1] = scale(add(scale(unit(0), m), scale(pp.d_dR, q * pp.beta)), n);
  e[2] = scale(pp.duals[0], inv(R));
  e[3] = scale(pp.duals[1], inv(R));
  e[4] = scale(pp.duals[2], inv(R * pp.beta));
  return e;
}

FrameVecs f_in_psi_coords(const JetPoint& y, double a) {
  const PsiPolar pp = psi_polar(y, a);
  FrameVecs f;
  f[0] = scale(unit(0), RJet(-1.0));
  f[1] = scale(pp.d_dR, -pp.beta);
  f[2] = scale(pp.duals[0], inv(pp.R));
  f[3] = scale(pp.duals[1], inv(pp.R));
  f[4] = scale(pp.duals[2], inv(pp.R * pp.beta));
  return f;
}

FrameVecs eh_frame(const JetPoint& y, double a) {
  const FrameVecs f = f_in_psi_coords(y, a);
  FrameVecs out{};
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c) out[i][c] = f[i + 1][c + 1];
  return out;
}

bool in_Ca(const Point& p, double a) {
  try {
    boost_coeffs(seed(p, 0), a);
    return true;
  } catch (const CaViolationError&) {
    return false;
  } catch (const DomainError&) {
    return false;
  }
}

BoostCoeffs boost_coeffs(const JetPoint& x, double a) {
  const Region reg = classify(values(x), a);
  switch (reg.tag) {
    case RegionTag::L_interior: return {RJet(1.0), RJet(0.0), RJet(0.0)};
    case RegionTag::L_boundary:
      return {truncated(RJet(1.0), 1), truncated(RJet(0.0), 1), truncated(RJet(0.0), 1)};
    case RegionTag::OutsideClosure: throw DomainError("Q is defined on B_a and L only");
    case RegionTag::B_a: break;
  }
  const double a4 = std::pow(a, 4);
  const RJet r = radial_r(x);
  const RJet ro2 = ro_squared(x);
  const RJet b = beta(x, a);
  const RJet rho = a4 * ro2 / (b * b);
  const RJet c = a4 * ro2 / (1.0 + b);
  const RJet x02 = x[0] * x[0];
  const RJet den = 1.0 - 4.0 * x02 * rho;
  if (!(den.value() > 0.0)) throw CaViolationError("4 x0^2 rho >= 1");
  const RJet pre = sqrt((1.0 + ro2 * rho) / den);
  const RJet w = r * r + x02;
  const RJet k = pre * (1.0 - w * w * c / (r * r));
  const RJet q = -pre * 2.0 * x[0] * w * c / r;
  if (!(k.value() > 0.0)) throw CaViolationError("k <= 0");
  return {k, q, rho};
}

Mat4c values(const SpinJet& s) {
  Mat4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = s[i][j].value();
  return m;
}

Vec4c values(const SpinorJet& w) {
  Vec4c v;
  for (int i = 0; i < 4; ++i) v(i) = w[i].value();
  return v;
}

SpinJet operator*(const SpinJet& a, const SpinJet& b) {
  SpinJet c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CJet s(0.0);
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

SpinorJet apply(const SpinJet& s, const SpinorJet& w) {
  SpinorJet out{};
  for (int i = 0; i < 4; ++i) {
    CJet acc(0.0);
    for (int k = 0; k < 4; ++k) acc += s[i][k] * w[k];
    out[i] = acc;
  }
  return out;
}

SpinJet spin_identity() {
  SpinJet s{};
  for (int i = 0; i < 4; ++i) s[i][i] = CJet(1.0);
  return s;
}

FrameValue frame_eval(FrameId id, const JetPoint& x, double a) {
  switch (id) {
    case FrameId::e: return {id, frame_e(x, a), {Family::Ga, a}};
    case FrameId::u: return {id, standard_frame(), {Family::Minkowski, a}};
    case FrameId::etilde: {
      require_ba(x, a, "frame etilde");
      const JetPoint y = psi_map(x);
      return {id, to_cartesian(etilde_in_psi_coords(y, a), y), {Family::GaTilde, a}};
    }
    case FrameId::f: {
      require_ba(x, a, "frame f");
      const JetPoint y = psi_map(x);
      return {id, to_cartesian(f_in_psi_coords(y, a), y), {Family::GaTilde, a}};
    }
    case FrameId::htilde: return frame_htilde(x, a);
    case FrameId::custom: break;
  }
  throw DomainError("no closed form for a custom frame");
}

FrameValue frame_htilde(const JetPoint& x, double a) {
  const Region reg = classify(values(x), a);
  switch (reg.tag) {
    // Q = 1 and e.G = u on L off the axis; u is the continuous extension.
    case RegionTag::L_interior: return {FrameId::htilde, standard_frame(), {Family::Ga, a}};
    case RegionTag::L_boundary:
      return {FrameId::htilde, truncated(standard_frame(), 1), {Family::Ga, a}};
    case RegionTag::OutsideClosure: throw DomainError("frame htilde lives on C_a");
    case RegionTag::B_a: break;
  }
  const JetMatrix qg = q_matrix(x, a) * g_matrix(x);
  return {FrameId::htilde, frame_times(frame_e(x, a), qg), {Family::Ga, a}};
}

TransformValue transform_eval(TransformId id, const JetPoint& x, double a) {
  TransformValue t;
  t.id = id;
  switch (id) {
    case TransformId::G: t.vector_part = g_matrix(x); break;
    case TransformId::Q: t.vector_part = q_matrix(x, a); break;
    case TransformId::kappa: t.vector_part = kappa_matrix(x, a); break;
    case TransformId::E01: {
      t.vector_part = JetMatrix::zero(5);
      t.vector_part(0, 1) = t.vector_part(1, 0) = RJet(-1.0);
      break;
    }
    case TransformId::Gtilde:
      t.is_spin = true;
      t.spin_part = gtilde(x, false);
      break;
    case TransformId::Qtilde:
      t.is_spin = true;
      t.spin_part = qtilde(x, a, false);
      break;
    case TransformId::kappatilde:
      t.is_spin = true;
      t.spin_part = kappatilde(x, a, false);
      break;
  }
  return t;
}

SpinJet spin_inverse(TransformId id, const JetPoint& x, double a) {
  switch (id) {
    case TransformId::Gtilde: return gtilde(x, true);
    case TransformId::Qtilde: return qtilde(x, a, true);
    case TransformId::kappatilde: return kappatilde(x, a, true);
    default: break;
  }
  throw UnknownTransitionError("no spin inverse for a vector transform");
}

RJet boost_parameter(const JetPoint& x) {
  const RJet s = coord_s(x);
  const RJet R = coord_R(x);
  const RJet ratio = (R - s) / (R + s);
  if (!(ratio.value() > 0.0)) throw DomainError("(R - s)/(R + s) must be positive");
  return log(ratio);
}

SpinJet spin_transition(FrameId from, FrameId to, const JetPoint& x, double a) {
  if (from == to) return spin_identity();
  using F = FrameId;
  auto is = [&](F f0, F t0) { return from == f0 && to == t0; };
  if (is(F::e, F::u)) return gtilde(x, true);
  if (is(F::u, F::e)) return gtilde(x, false);
  if (is(F::e, F::htilde)) return gtilde(x, true) * qtilde(x, a, true);
  if (is(F::htilde, F::e)) return qtilde(x, a, false) * gtilde(x, false);
  if (is(F::u, F::htilde))
    return adjoint_conj(gtilde(x, true), qtilde(x, a, true), gtilde(x, false));
  if (is(F::htilde, F::u))
    return adjoint_conj(gtilde(x, true), qtilde(x, a, false), gtilde(x, false));
  if (is(F::etilde, F::f)) return kappatilde(x, a, false);
  if (is(F::f, F::etilde)) return kappatilde(x, a, true);
  throw UnknownTransitionError("no known spin lift from " + to_string(from) + " to " +
                               to_string(to));
}

}  // namespace twz
