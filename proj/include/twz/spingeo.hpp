#pragma once

// Spinor calculus on top of frames and curvature.
//
//   nabla_X phi = X(phi) + Gamma(X) phi,
//   Gamma(X) = 1/2 sum_{i<j} eps(i) eps(j) omega_ij(X) gamma_i gamma_j
//   D phi = sum_k eps(k) gamma_k nabla_{F_k} phi
//   P_k = nabla_{F_k} phi + (1/n) gamma_k D phi
//   g(V_phi, X) = <phi, X.phi>
//
// Spinor fields are closed-form component functions in a named frame, so all
// derivatives are exact jets.

#include <array>
#include <string>

#include "twz/clifford.hpp"
#include "twz/curvature.hpp"
#include "twz/frames.hpp"

namespace twz {

enum class SpinorKind { psi_bc, nu_bc, psi_w0, constant };

struct SpinorField {
  SpinorKind kind = SpinorKind::constant;
  FrameId frame = FrameId::u;
  cplx b = 1.0;
  cplx c = 0.0;
  Vec4c w = Vec4c::Zero();  // w0 for psi_w0, the value for constant

  std::string label() const;
};

/// psi_bc, with components (-x0 b, x0 c, r b, r c) in the lift of e.
SpinorField psi_bc(cplx b, cplx c, FrameId frame = FrameId::e);
/// (0, 0, b, c) in the lift of f.
SpinorField nu_bc(cplx b, cplx c);
/// (sum x_i d/dx_i) . w0 in the lift of u, for Minkowski space.
SpinorField psi_w0(const Vec4c& w0);
SpinorField constant_spinor(const Vec4c& w, FrameId frame);

/// Components at x. psi_bc supports frames e, u (polynomial form, valid on
/// the axis) and htilde (G~^-1 Q~^-1 applied to the e components on B_a, the
/// u components on L).
SpinorJet spinor_components(const SpinorField& field, const JetPoint& x, double a);

/// Frame, metric and connection data at one point.
struct SpinGeometry {
  FrameId frame_id = FrameId::custom;
  FrameVecs frame{};
  LocalGeometry geo;
  ConnectionForms forms;
  std::array<Mat4c, 5> connection{};  // Gamma(F_k)
  int dim() const { return geo.dim(); }
};

SpinGeometry spin_geometry(FrameId frame, const MetricSpec& spec, const Point& p);
SpinGeometry spin_geometry(const FrameVecs& frame, FrameId id, const JetMatrix& g);

/// Gamma(F_k) for each frame direction.
std::array<Mat4c, 5> spin_connection(const FrameVecs& frame, const ConnectionForms& forms);

Vec4c spinor_cov_deriv(const SpinorJet& phi, int k, const SpinGeometry& sg);
/// Plain directional derivative F_k(phi) of the components.
Vec4c frame_derivative(const SpinorJet& phi, int k, const SpinGeometry& sg);
Vec4c dirac(const SpinorJet& phi, const SpinGeometry& sg);

struct TwistorResidual {
  std::array<Vec4c, 5> p{};
  double norm = 0.0;        // max_k |P_k|
  double grad_norm = 0.0;   // max_k |nabla_k phi|
  double dirac_norm = 0.0;  // max_k |gamma_k D phi| / n
  /// norm / (1 + grad_norm + dirac_norm)
  double normalized() const { return norm / (1.0 + grad_norm + dirac_norm); }
};

TwistorResidual twistor_residual(const SpinorJet& phi, const SpinGeometry& sg);

/// w_to = S w_from for a known lift.
SpinorValue change_spinor_frame(const SpinorValue& phi, FrameId to, const Point& p, double a);

/// e^{sigma/2} phi, re-tagged to `to_frame`. Throws ScaleMismatchError unless
/// metric(to) = e^{2 sigma} metric(from) at p within 1e-10.
SpinorValue conformal_rescale_spinor(const SpinorValue& phi, double sigma, FrameId to_frame,
                                     const MetricSpec& from, const MetricSpec& to,
                                     const Point& p);

/// Cartesian components of V_phi. Throws NonRealPairingError when a pairing
/// <phi, F_k . phi> has imaginary part above 1e-12 (relative).
Eigen::VectorXd spinor_square(const Vec4c& phi, const FrameVecs& frame);
/// Jet version for divergence computations.
VecJ spinor_square_jet(const SpinorJet& phi, const FrameVecs& frame);

/// <psi_bc, psi_bc> from the components in frame e.
double length_square_u(cplx b, cplx c, const Point& p);
/// -u Ric^0 - (n - 2) Hess(u)^0 for u = <psi_bc, psi_bc> under g_a.
Eigen::MatrixXd einstein_rescale_residual(cplx b, cplx c, const Point& p, double a);

/// d_k X^k + Gamma^k_kj X^j as a jet (one order below X and Gamma).
RJet divergence_jet(const VecJ& x, const LocalGeometry& geo);

struct EssentialityProbe {
  Eigen::VectorXd v_dpsi;  // V of D psi_bc
  Eigen::VectorXd rhs;     // (n/2) grad div V_{psi_bc}
};

/// Both sides at p under g_a, using frame e.
EssentialityProbe essentiality_probe(cplx b, cplx c, double a, const Point& p);
/// The same pair for psi_w0 on Minkowski space (the flat oracle).
EssentialityProbe essentiality_flat(const Vec4c& w0, const Point& p);

}  // namespace twz
