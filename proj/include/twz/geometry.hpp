#pragma once

// Points, cone regions and the metric family on R^5.
//
// Coordinates are x = (x0, x1, x2, x3, x4) with x0 timelike. r is the
// Euclidean radius of (x1..x4), D = r^2 - x0^2, and r_o = D / r outside the
// cone L = {r <= |x0|} and 0 on it. All fields are evaluated in Cartesian
// components as jets, so every derivative used downstream is exact.

#include <Eigen/Dense>
#include <array>
#include <string>

#include "twz/jets.hpp"

namespace twz {

using VecJ = std::array<RJet, kVars>;

enum class RegionTag { L_interior, L_boundary, B_a, OutsideClosure };

struct Region {
  RegionTag tag = RegionTag::OutsideClosure;
  bool on_axis_r0 = false;
  bool at_origin = false;
};

std::string to_string(RegionTag tag);

/// Exact classification; the samplers carry their own exclusion bands.
Region classify(const Point& p, double a);

double radius(const Point& p);
/// r^2 - x0^2.
double cone_gap(const Point& p);
/// Plain r_o (0 on L).
double ro_value(const Point& p);

enum class Family { Minkowski, Ga, GaTilde, Ha, EguchiHanson };

struct MetricSpec {
  Family family = Family::Minkowski;
  double a = 1.0;

  int dim() const {
    return family == Family::Ha || family == Family::EguchiHanson ? 4 : 5;
  }
};

std::string to_string(Family family);

/// Square matrix of jets. dim is 5, or 4 for the Riemannian metrics on
/// (x1..x4); in the 4d case component index i differentiates along jet
/// variable i + 1 (see var()).
struct JetMatrix {
  int dim = 5;
  std::array<std::array<RJet, kVars>, kVars> m{};

  RJet& operator()(int i, int j) { return m[i][j]; }
  const RJet& operator()(int i, int j) const { return m[i][j]; }
  /// Jet variable that coordinate index i refers to.
  int var(int i) const { return i + kVars - dim; }
  Eigen::MatrixXd values() const;
  int order() const;

  static JetMatrix zero(int dim);
  static JetMatrix identity(int dim);
  static JetMatrix minkowski();
};

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
JetMatrix transpose(const JetMatrix& a);
/// Inverse by Gauss-Jordan elimination on jets with pivoting on values.
JetMatrix inverse(const JetMatrix& g);
/// Matrix-vector product M v.
VecJ apply(const JetMatrix& m, const VecJ& v);
VecJ scale(const VecJ& v, const RJet& s);
VecJ add(const VecJ& v, const VecJ& w);
RJet pair(const VecJ& covector, const VecJ& vector);
/// g(X, Y) with a 5d metric.
RJet bilinear(const JetMatrix& g, const VecJ& x, const VecJ& y);
/// Symmetric product (v w + w v) / 2.
JetMatrix sym_product(const VecJ& v, const VecJ& w);

// Scalar building blocks. Functions taking a JetPoint accept any jets as
// inputs (seeded coordinates or composed maps); region decisions use the
// values.

RJet radial_r(const JetPoint& x);
/// Throws AmbiguousError on L_o; constant zero on L.
RJet radial_ro(const JetPoint& x);
/// r_o^2, which is C^1 across L_o: on L_o the zero jet truncated to order 1.
RJet ro_squared(const JetPoint& x);
/// sqrt(1 - (a r_o)^4); DomainError when a r_o >= 1.
RJet beta(const JetPoint& x, double a);
/// ln |r^2 - x0^2|; SingularError on L_o.
RJet mu(const JetPoint& x);
/// s = -x0 / (r^2 - x0^2) and R = r / (r^2 - x0^2).
RJet coord_s(const JetPoint& x);
RJet coord_R(const JetPoint& x);

std::array<VecJ, 3> sigma_forms(const JetPoint& x);
/// Vector fields d/d sigma_i, dual to sigma_forms and annihilated by dr.
std::array<VecJ, 3> sigma_duals(const JetPoint& x);
VecJ dr_form(const JetPoint& x);
VecJ d_dr(const JetPoint& x);
VecJ alpha_form(const JetPoint& x);
/// T = -(r^2 + x0^2) d/dr - 2 r x0 d/dx0.
VecJ field_T(const JetPoint& x);
/// V = -2 x0 r d/dr - (r^2 + x0^2) d/dx0 (polynomial in x).
VecJ field_V(const JetPoint& x);

JetMatrix metric_components(const MetricSpec& spec, const JetPoint& x);
JetMatrix metric_components(const MetricSpec& spec, const Point& p, int order = kMaxOrder);

struct GaParts {
  JetMatrix g0;
  JetMatrix omega;
  JetMatrix rho;
};
/// g_a = g0 - omega + rho.
GaParts decompose_ga(const JetPoint& x, double a);

/// Psi(x) = (-x0, x1, .., x4) / (r^2 - x0^2): realizes (s, R) on the same
/// S^3 ray. It is an involution off L_o.
JetPoint psi_map(const JetPoint& x);
Point psi_map(const Point& p);
/// d Psi / dx in closed form.
JetMatrix psi_jacobian(const JetPoint& x);

}  // namespace twz
