#include "twz/spingeo.hpp"

#include <cmath>

#include "twz/errors.hpp"

namespace twz {

namespace {

constexpr int kN = 5;

CJet cj(const RJet& f) { return CJet(f); }

// Components of psi_bc in the lift of u: G~^-1 applied to the e components,
// written without the 1/r factors.
SpinorJet psi_bc_u(cplx b, cplx c, const JetPoint& x) {
  const cplx I(0, 1);
  const CJet z1 = cj(x[1]) - cj(x[2]) * I;  // x1 - i x2
  const CJet z2 = cj(x[3]) + cj(x[4]) * I;  // x3 + i x4
  return {cj(x[0]) * (-b), cj(x[0]) * c, z1 * b - z2 * c, conj(z2) * b + conj(z1) * c};
}

SpinorJet psi_bc_e(cplx b, cplx c, const JetPoint& x) {
  const RJet r = radial_r(x);
  return {cj(x[0]) * (-b), cj(x[0]) * c, cj(r) * b, cj(r) * c};
}

SpinorJet constant_jet(const Vec4c& w) { return {CJet(w(0)), CJet(w(1)), CJet(w(2)), CJet(w(3))}; }

SpinorJet truncated(SpinorJet s, int order) {
  for (auto& x : s) x.truncate(order);
  return s;
}

// <phi, gamma_k phi> as a complex jet.
CJet pairing(const SpinorJet& phi, int k) {
  const Mat4c m = gammas()[0] * gammas()[k];
  CJet s(0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (m(i, j) != cplx(0.0)) s += conj(phi[i]) * phi[j] * m(i, j);
  return s;
}

}  // namespace

std::string SpinorField::label() const {
  switch (kind) {
    case SpinorKind::psi_bc: return "psi_bc";
    case SpinorKind::nu_bc: return "nu_bc";
    case SpinorKind::psi_w0: return "psi_w0";
    case SpinorKind::constant: return "constant";
  }
  return "unknown";
}

SpinorField psi_bc(cplx b, cplx c, FrameId frame) {
  if (frame != FrameId::e && frame != FrameId::u && frame != FrameId::htilde)
    throw UnknownTransitionError("psi_bc is available in the e, u and htilde lifts");
  SpinorField f;
  f.kind = SpinorKind::psi_bc;
  f.frame = frame;
  f.b = b;
  f.c = c;
  return f;
}

SpinorField nu_bc(cplx b, cplx c) {
  SpinorField f;
  f.kind = SpinorKind::nu_bc;
  f.frame = FrameId::f;
  f.b = b;
  f.c = c;
  return f;
}

SpinorField psi_w0(const Vec4c& w0) {
  SpinorField f;
  f.kind = SpinorKind::psi_w0;
  f.frame = FrameId::u;
  f.w = w0;
  return f;
}

SpinorField constant_spinor(const Vec4c& w, FrameId frame) {
  SpinorField f;
  f.kind = SpinorKind::constant;
  f.frame = frame;
  f.w = w;
  return f;
}

SpinorJet spinor_components(const SpinorField& field, const JetPoint& x, double a) {
  switch (field.kind) {
    case SpinorKind::constant: return constant_jet(field.w);
    case SpinorKind::nu_bc: return {CJet(0.0), CJet(0.0), CJet(field.b), CJet(field.c)};
    case SpinorKind::psi_w0: {
      SpinorJet out{};
      for (int i = 0; i < 4; ++i) out[i] = CJet(0.0);
      for (int k = 0; k < kN; ++k) {
        const Vec4c gw = gammas()[k] * field.w;
        for (int i = 0; i < 4; ++i) out[i] += cj(x[k]) * gw(i);
      }
      return out;
    }
    case SpinorKind::psi_bc: break;
  }
  const Region reg = classify(values(x), a);
  if (reg.tag == RegionTag::OutsideClosure) throw DomainError("psi_bc lives on B_a and L");
  switch (field.frame) {
    case FrameId::e: return psi_bc_e(field.b, field.c, x);
    case FrameId::u: return psi_bc_u(field.b, field.c, x);
    case FrameId::htilde:
      if (reg.tag == RegionTag::L_interior) return psi_bc_u(field.b, field.c, x);
      if (reg.tag == RegionTag::L_boundary) return truncated(psi_bc_u(field.b, field.c, x), 1);
      return twz::apply(spin_transition(FrameId::e, FrameId::htilde, x, a),
                   psi_bc_e(field.b, field.c, x));
    default: break;
  }
  throw UnknownTransitionError("psi_bc has no closed form in frame " + to_string(field.frame));
}

std::array<Mat4c, 5> spin_connection(const FrameVecs& frame, const ConnectionForms& forms) {
  const auto& g = gammas();
  std::array<Mat4c, 5> out;
  for (int k = 0; k < kN; ++k) {
    Mat4c m = Mat4c::Zero();
    for (int i = 0; i < kN; ++i)
      for (int j = i + 1; j < kN; ++j)
        m += (0.5 * eps(i) * eps(j) * forms.on_frame(frame, i, j, k)) * (g[i] * g[j]);
    out[k] = m;
  }
  return out;
}

SpinGeometry spin_geometry(const FrameVecs& frame, FrameId id, const JetMatrix& g) {
  if (g.dim != kN) throw DimensionError("spinors live on the 5d metrics");
  SpinGeometry sg;
  sg.frame_id = id;
  sg.frame = frame;
  sg.geo = local_geometry(g);
  sg.forms = connection_forms(frame, sg.geo);
  sg.connection = spin_connection(frame, sg.forms);
  return sg;
}

SpinGeometry spin_geometry(FrameId frame, const MetricSpec& spec, const Point& p) {
  const JetPoint x = seed(p);
  return spin_geometry(frame_eval(frame, x, spec.a).vec, frame, metric_components(spec, x));
}

Vec4c frame_derivative(const SpinorJet& phi, int k, const SpinGeometry& sg) {
  Vec4c v = Vec4c::Zero();
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < kN; ++a) v(i) += phi[i].d(a) * sg.frame[k][a].value();
  return v;
}

Vec4c spinor_cov_deriv(const SpinorJet& phi, int k, const SpinGeometry& sg) {
  return frame_derivative(phi, k, sg) + sg.connection[k] * values(phi);
}

Vec4c dirac(const SpinorJet& phi, const SpinGeometry& sg) {
  Vec4c d = Vec4c::Zero();
  for (int k = 0; k < kN; ++k) d += eps(k) * (gammas()[k] * spinor_cov_deriv(phi, k, sg));
  return d;
}

TwistorResidual twistor_residual(const SpinorJet& phi, const SpinGeometry& sg) {
  TwistorResidual t;
  std::array<Vec4c, 5> nab;
  Vec4c d = Vec4c::Zero();
  for (int k = 0; k < kN; ++k) {
    nab[k] = spinor_cov_deriv(phi, k, sg);
    d += eps(k) * (gammas()[k] * nab[k]);
  }
  for (int k = 0; k < kN; ++k) {
    const Vec4c gd = (gammas()[k] * d) / double(kN);
    t.p[k] = nab[k] + gd;
    t.norm = std::max(t.norm, t.p[k].norm());
    t.grad_norm = std::max(t.grad_norm, nab[k].norm());
    t.dirac_norm = std::max(t.dirac_norm, gd.norm());
  }
  return t;
}

SpinorValue change_spinor_frame(const SpinorValue& phi, FrameId to, const Point& p, double a) {
  const SpinJet s = spin_transition(phi.frame, to, seed(p, 0), a);
  return {values(s) * phi.w, to};
}

SpinorValue conformal_rescale_spinor(const SpinorValue& phi, double sigma, FrameId to_frame,
                                     const MetricSpec& from, const MetricSpec& to,
                                     const Point& p) {
  const Eigen::MatrixXd g1 = metric_components(from, p, 0).values();
  const Eigen::MatrixXd g2 = metric_components(to, p, 0).values();
  const Eigen::MatrixXd diff = g2 - std::exp(2.0 * sigma) * g1;
  if (diff.norm() > 1e-10 * (1.0 + g2.norm()))
    throw ScaleMismatchError("metrics are not related by exp(2 sigma) at this point");
  return {std::exp(0.5 * sigma) * phi.w, to_frame};
}

VecJ spinor_square_jet(const SpinorJet& phi, const FrameVecs& frame) {
  VecJ v{};
  for (int a = 0; a < kN; ++a) v[a] = RJet(0.0);
  double scale = 0.0;
  for (const auto& x : phi) scale += std::norm(x.value());
  for (int k = 0; k < kN; ++k) {
    const CJet pk = pairing(phi, k);
    if (std::abs(pk.value().imag()) > 1e-12 * (1.0 + scale))
      throw NonRealPairingError("<phi, X.phi> is not real");
    const RJet re = real_part(pk) * eps(k);
    for (int a = 0; a < kN; ++a) v[a] += re * frame[k][a];
  }
  return v;
}

Eigen::VectorXd spinor_square(const Vec4c& phi, const FrameVecs& frame) {
  SpinorJet j{};
  for (int i = 0; i < 4; ++i) j[i] = CJet(phi(i));
  FrameVecs f0 = frame;
  for (auto& v : f0)
    for (auto& c : v) c = RJet(c.value());
  const VecJ v = spinor_square_jet(j, f0);
  Eigen::VectorXd out(kN);
  for (int a = 0; a < kN; ++a) out(a) = v[a].value();
  return out;
}

double length_square_u(cplx b, cplx c, const Point& p) {
  // On the axis (inside L, where g_a is Minkowski) the u lift is orthonormal.
  const SpinorJet w = radius(p) == 0.0 ? psi_bc_u(b, c, seed(p, 0)) : psi_bc_e(b, c, seed(p, 0));
  return spinor_inner(values(w), values(w)).real();
}

Eigen::MatrixXd einstein_rescale_residual(cplx b, cplx c, const Point& p, double a) {
  const JetPoint x = seed(p);
  const SpinorJet w = psi_bc_e(b, c, x);
  RJet u(0.0);
  for (int i = 0; i < 4; ++i) {
    const RJet m = real_part(conj(w[i]) * w[i]);
    u += i < 2 ? -m : m;
  }
  const LocalGeometry geo = local_geometry(metric_components({Family::Ga, a}, x));
  const CurvatureBundle curv = curvature(geo);
  const Eigen::MatrixXd g = geo.g.values();
  return -u.value() * trace_free(curv.ricci, g) - (kN - 2.0) * trace_free(hessian_scalar(u, geo), g);
}

RJet divergence_jet(const VecJ& x, const LocalGeometry& geo) {
  const int n = geo.dim();
  RJet s(0.0);
  for (int k = 0; k < n; ++k) {
    s += diff(x[k], geo.g.var(k));
    for (int j = 0; j < n; ++j) s += geo.gamma.g[k][k][j] * x[j];
  }
  return s;
}

namespace {

EssentialityProbe essentiality(const SpinorJet& phi, const SpinGeometry& sg) {
  EssentialityProbe e;
  e.v_dpsi = spinor_square(dirac(phi, sg), sg.frame);
  const RJet div = divergence_jet(spinor_square_jet(phi, sg.frame), sg.geo);
  e.rhs = 0.5 * kN * gradient(div, sg.geo);
  return e;
}

}  // namespace

EssentialityProbe essentiality_probe(cplx b, cplx c, double a, const Point& p) {
  const SpinGeometry sg = spin_geometry(FrameId::e, {Family::Ga, a}, p);
  return essentiality(psi_bc_e(b, c, seed(p)), sg);
}

EssentialityProbe essentiality_flat(const Vec4c& w0, const Point& p) {
  const SpinGeometry sg = spin_geometry(FrameId::u, {Family::Minkowski, 1.0}, p);
  return essentiality(spinor_components(psi_w0(w0), seed(p), 1.0), sg);
}

}  // namespace twz
