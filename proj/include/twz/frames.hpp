#pragma once

// Orthonormal frames and their transition matrices, all as jets in
// Cartesian components.
//
//   e       orthonormal for g_a on B_a^> (B_a and L off the axis)
//   u       the coordinate frame d/dx0 .. d/dx4
//   etilde  D e, orthonormal for g~_a; built in Psi coordinates
//   f       {-d/ds, -beta d/dR, R^-1 d/dsigma_1, R^-1 d/dsigma_2, (R beta)^-1 d/dsigma_3}
//   htilde  e.(Q G) on B_a, and u on the closed cone L
//
// The Psi-coordinate frames (etilde, f) and the boosts kappa, kappatilde are
// only evaluated on B_a: on L the ratio (R - s)/(R + s) is negative.

#include <array>

#include "twz/clifford.hpp"
#include "twz/geometry.hpp"

namespace twz {

using FrameVecs = std::array<VecJ, 5>;

struct FrameValue {
  FrameId id = FrameId::custom;
  FrameVecs vec{};
  MetricSpec spec{};
};

/// (F.M)_j = sum_i F_i M_ij.
FrameVecs frame_times(const FrameVecs& frame, const JetMatrix& m);
/// Gram matrix g(F_i, F_j) (values).
Eigen::MatrixXd gram(const FrameVecs& frame, const JetMatrix& g);

FrameValue frame_eval(FrameId id, const JetPoint& x, double a);
FrameValue frame_htilde(const JetPoint& x, double a);

/// Components of etilde and f in Psi coordinates (y = Psi(x)).
FrameVecs etilde_in_psi_coords(const JetPoint& y, double a);
FrameVecs f_in_psi_coords(const JetPoint& y, double a);
/// f_1..f_4 as a 4d frame for the Eguchi-Hanson metric on (y1..y4): slot c of
/// each vector is the y_{c+1} component (see JetMatrix::var).
FrameVecs eh_frame(const JetPoint& y, double a);

/// Boost coefficients of Q: k, q, rho = a^4 beta^-2 r_o^2.
struct BoostCoeffs {
  RJet k;
  RJet q;
  RJet rho;
};

/// 4 x0^2 rho < 1 and k > 0. Points of L always qualify.
bool in_Ca(const Point& p, double a);
/// Throws CaViolationError outside C_a.
BoostCoeffs boost_coeffs(const JetPoint& x, double a);

using SpinJet = std::array<std::array<CJet, 4>, 4>;
using SpinorJet = std::array<CJet, 4>;

Mat4c values(const SpinJet& s);
Vec4c values(const SpinorJet& w);
SpinJet operator*(const SpinJet& a, const SpinJet& b);
SpinorJet apply(const SpinJet& s, const SpinorJet& w);
SpinJet spin_identity();

enum class TransformId { G, Gtilde, Q, Qtilde, kappa, kappatilde, E01 };

struct TransformValue {
  TransformId id = TransformId::G;
  bool is_spin = false;
  JetMatrix vector_part{};  // 5x5, when !is_spin
  SpinJet spin_part{};      // 4x4, when is_spin
};

TransformValue transform_eval(TransformId id, const JetPoint& x, double a);
/// Closed-form inverse of one of Gtilde, Qtilde, kappatilde.
SpinJet spin_inverse(TransformId id, const JetPoint& x, double a);

/// t = ln((R - s)/(R + s)) on B_a.
RJet boost_parameter(const JetPoint& x);

/// S with w_to = S w_from for the supported pairs among e, u, htilde and
/// etilde, f. Other pairs throw UnknownTransitionError.
SpinJet spin_transition(FrameId from, FrameId to, const JetPoint& x, double a);

}  // namespace twz
