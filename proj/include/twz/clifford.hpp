#pragma once

// Cl(1,4) acting on C^4 through five fixed gamma matrices, with
// gamma_0^2 = 1 and gamma_i^2 = -1, so X.X = -g(X, X) for a vector X.
//
// Spinor components always refer to the spin lift of some orthonormal frame.
// If a frame X relates to a frame E by X = E.M (X_j = sum_i E_i M_ij), the
// lift S of M satisfies S gamma_j S^-1 = sum_i M_ij gamma_i and components
// change as w_X = S^-1 w_E.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

namespace twz {

using cplx = std::complex<double>;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Signature sign of frame direction i: -1 for i = 0, +1 otherwise.
constexpr double eps(int i) { return i == 0 ? -1.0 : 1.0; }

enum class FrameId { e, f, etilde, u, htilde, custom };

std::string to_string(FrameId id);

const std::array<Mat4c, 5>& gammas();

struct SpinorValue {
  Vec4c w = Vec4c::Zero();
  FrameId frame = FrameId::custom;
};

/// One exactly evaluated identity among gamma_i gamma_j + gamma_j gamma_i = -2 eta_ij.
struct GammaIdentity {
  int i = 0;
  int j = 0;
  bool holds = false;
};

/// All 15 relations, evaluated in Gaussian-integer arithmetic.
std::vector<GammaIdentity> gamma_relations();

/// (sum_i v_i gamma_i) w, with v given in the frame of w.
SpinorValue clifford_mul(const std::array<double, 5>& v, FrameId v_frame, const SpinorValue& w);
Mat4c clifford_matrix(const std::array<double, 5>& v);

/// (gamma_0 w_phi, w_psi) with the Hermitian product conjugate-linear in the
/// first slot.
cplx spinor_inner(const SpinorValue& phi, const SpinorValue& psi);
cplx spinor_inner(const Vec4c& phi, const Vec4c& psi);

/// exp((t/2) gamma_i gamma_j) in closed form (i != j).
Mat4c spin_exp(double t, int i, int j);

/// M with S gamma_j S^-1 = sum_i M_ij gamma_i. Throws NotInSpinGroupError if
/// a conjugate leaves the span of the gammas or M is not real.
Mat5 lambda_check(const Mat4c& s);

/// exp(t E) for a 5x5 generator, used to compare boosts.
Mat5 matrix_exp(const Mat5& m);

}  // namespace twz
