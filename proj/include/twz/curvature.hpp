#pragma once

// Levi-Civita curvature computed pointwise from one order-3 metric jet.
//
// Conventions:
//   R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]
//   R(d_i, d_j) d_k = R^l_kij d_l
//   Ric_kj = R^i_kij, S = g^kj Ric_kj
//   R_lkij = g_lm R^m_kij, W_lkij its trace-free part
// With these, the round sphere has positive Ricci curvature.
//
// For a frame F orthonormal with signs eps(i):
//   omega_ij(X) = g(nabla_X F_i, F_j)
//   Omega_ij(X, Y) = g(R(X, Y) F_i, F_j) = d omega_ij - sum_k eps(k) omega_ik ^ omega_kj
// with (alpha ^ beta)(X, Y) = alpha(X) beta(Y) - alpha(Y) beta(X).

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "twz/frames.hpp"
#include "twz/geometry.hpp"

namespace twz {

/// Rank-4 array over up to five indices.
struct Tensor4 {
  int dim = 5;
  std::array<double, 625> v{};

  double& operator()(int a, int b, int c, int d) { return v[((a * 5 + b) * 5 + c) * 5 + d]; }
  double operator()(int a, int b, int c, int d) const {
    return v[((a * 5 + b) * 5 + c) * 5 + d];
  }
  double max_abs() const;
  double norm() const;
};

Tensor4 operator-(const Tensor4& a, const Tensor4& b);
Tensor4 operator*(double s, const Tensor4& a);

/// Gamma^k_ij as jets; g[k][i][j].
struct Christoffel {
  int dim = 5;
  std::array<std::array<std::array<RJet, 5>, 5>, 5> g{};
};

/// Metric jets together with the inverse and Christoffel symbols.
struct LocalGeometry {
  JetMatrix g;
  JetMatrix ginv;
  Christoffel gamma;
  int dim() const { return g.dim; }
};

LocalGeometry local_geometry(const JetMatrix& g);
LocalGeometry local_geometry(const MetricSpec& spec, const Point& p);

struct CurvatureBundle {
  int dim = 5;
  Eigen::MatrixXd metric;
  Eigen::MatrixXd inverse;
  Tensor4 riemann;      // R^l_kij
  Tensor4 riemann_low;  // R_lkij
  Eigen::MatrixXd ricci;
  double scalar = 0.0;
  Tensor4 weyl;  // W_lkij
};

CurvatureBundle curvature(const LocalGeometry& geo);
CurvatureBundle curvature(const MetricSpec& spec, const Point& p);

/// Frame connection forms as coordinate covectors:
/// omega[i][j][a] = omega_ij(d_a), jets of order one less than the frame.
struct ConnectionForms {
  int dim = 5;
  std::array<std::array<VecJ, 5>, 5> omega{};

  /// omega_ij(F_k).
  double on_frame(const FrameVecs& frame, int i, int j, int k) const;
};

/// Throws FrameMismatchError if the frame is not orthonormal within 1e-8.
ConnectionForms connection_forms(const FrameVecs& frame, const LocalGeometry& geo);

/// Omega_ij(F_k, F_l) from the Riemann tensor.
Tensor4 curvature_forms(const FrameVecs& frame, const CurvatureBundle& curv);
/// Omega_ij(F_k, F_l) from the second structure equation.
Tensor4 curvature_forms_structure(const FrameVecs& frame, const ConnectionForms& cf);
/// (d theta^i - eps(i) sum_m omega_im ^ theta^m)(F_k, F_l), stored at
/// (i, k, l, 0), for the dual coframe theta^i = eps(i) g(F_i, .).
Tensor4 first_structure_residual(const FrameVecs& frame, const LocalGeometry& geo,
                                 const ConnectionForms& cf);

/// Split of a curvature operator in a 4d orthonormal frame (Riemannian).
struct AsdSplit {
  Eigen::Matrix3d w_plus;
  Eigen::Matrix3d w_minus;
};

/// The operator C_AB = Omega_{ij}(F_k, F_l) is projected with (1 +- *)/2 and
/// made trace-free on each block. The Hodge star uses the orientation of
/// F_1..F_4 when `orientation` > 0 and the opposite one otherwise. Throws
/// DimensionError for dim != 4.
AsdSplit asd_split(const Tensor4& omega_frame, int dim, double orientation = 1.0);
/// Sign of det(F) in coordinate components (4d frames).
double frame_orientation(const FrameVecs& frame);

/// Components in the frame basis of the three 2-forms
/// l1 = F12 - F34, l2 = F13 - F42, l3 = F14 - F23 (frame indices 1..4 of a
/// 5-slot frame are shifted to 0..3 here).
std::array<Eigen::Matrix4d, 3> asd_basis();

/// (L_X g)_ij.
Eigen::MatrixXd lie_derivative_metric(const VecJ& x, const JetMatrix& g);
/// div X = d_k X^k + Gamma^k_kj X^j.
double divergence(const VecJ& x, const LocalGeometry& geo);
/// Hess(u)_ij = d_i d_j u - Gamma^k_ij d_k u.
Eigen::MatrixXd hessian_scalar(const RJet& u, const LocalGeometry& geo);
double laplacian_scalar(const RJet& u, const LocalGeometry& geo);
/// T - (g^ij T_ij / n) g.
Eigen::MatrixXd trace_free(const Eigen::MatrixXd& t, const Eigen::MatrixXd& g);
/// grad u = g^-1 du (values).
Eigen::VectorXd gradient(const RJet& u, const LocalGeometry& geo);

/// Ric(g_a) minus the right-hand side assembled from g~_a and mu = ln|r^2 - x0^2|.
/// Throws SingularError on L_o.
Eigen::MatrixXd conformal_ricci_check(const Point& p, double a);
/// Same identity with g~ = Minkowski and g = D^2 g0.
Eigen::MatrixXd conformal_ricci_check_flat(const Point& p);

/// Lowered Weyl tensors of g_a and g~_a at p in B_a.
struct WeylPair {
  Tensor4 ga;
  Tensor4 gatilde;
  double d = 0.0;  // r^2 - x0^2
};
WeylPair weyl_pair(const Point& p, double a);

struct DecayFit {
  double exponent = 0.0;
  std::vector<double> distances;
  std::vector<double> norms;
};

/// Max-abs Weyl component of g_a at points approaching L_o along x0 fixed
/// from inside B_a; exponent fitted in log-log over n geometric distances
/// after dropping the `drop` smallest.
DecayFit weyl_decay(const Point& base_on_lo, double a, int n = 10, int drop = 2,
                    double d_max = 0.05);

}  // namespace twz
