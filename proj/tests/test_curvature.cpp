#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "twz/curvature.hpp"
#include "twz/errors.hpp"
#include "twz/sampling.hpp"

namespace twz {
namespace {

using testing::Rng;

// Round S^4 of radius 1 in stereographic coordinates on (x1..x4).
JetMatrix sphere_metric(const JetPoint& x) {
  JetMatrix g = JetMatrix::zero(4);
  RJet q(1.0);
  for (int i = 1; i < 5; ++i) q += x[i] * x[i];
  const RJet f = 4.0 / (q * q);
  for (int i = 0; i < 4; ++i) g(i, i) = f;
  return g;
}

// Plain-double metric for the finite-difference oracle.
using MetricFn = std::function<Eigen::MatrixXd(const Point&)>;

// Christoffel symbols by central differences of the metric.
std::array<Eigen::MatrixXd, 5> fd_christoffel(const MetricFn& g, const Point& p, int dim, double h) {
  const int off = 5 - dim;
  std::array<Eigen::MatrixXd, 5> dg;
  for (int k = 0; k < dim; ++k) {
    Point a = p, b = p;
    a[k + off] += h;
    b[k + off] -= h;
    dg[k] = (g(a) - g(b)) / (2 * h);
  }
  const Eigen::MatrixXd ginv = g(p).inverse();
  std::array<Eigen::MatrixXd, 5> out;
  for (int k = 0; k < dim; ++k) {
    out[k] = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int l = 0; l < dim; ++l)
          out[k](i, j) += 0.5 * ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
  }
  return out;
}

TEST(Curvature, ChristoffelOfHaMatchesFiniteDifferences) {
  const double a = 1.0;
  const Point p{0, 0.35, -0.2, 0.3, 0.25};
  const LocalGeometry geo = local_geometry({Family::Ha, a}, p);
  const MetricFn g = [a](const Point& q) { return metric_components({Family::Ha, a}, q, 0).values(); };
  const auto fd = fd_christoffel(g, p, 4, 1e-5);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(geo.gamma.g[k][i][j].value(), fd[k](i, j), 1e-5);
}

TEST(Curvature, ChristoffelOfGaMatchesFiniteDifferences) {
  const double a = 1.0;
  const Point p{0.1, 0.35, -0.2, 0.3, 0.25};
  const LocalGeometry geo = local_geometry({Family::Ga, a}, p);
  const MetricFn g = [a](const Point& q) { return metric_components({Family::Ga, a}, q, 0).values(); };
  const auto fd = fd_christoffel(g, p, 5, 1e-5);
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) EXPECT_NEAR(geo.gamma.g[k][i][j].value(), fd[k](i, j), 1e-5);
}

TEST(Curvature, MetricCompatibility) {
  const Point p{0.1, 0.35, -0.2, 0.3, 0.25};
  const LocalGeometry geo = local_geometry({Family::Ga, 1.0}, p);
  // nabla_k g_ij = d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il.
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        double v = geo.g(i, j).d(k);
        for (int l = 0; l < 5; ++l)
          v -= geo.gamma.g[l][k][i].value() * geo.g(l, j).value() +
               geo.gamma.g[l][k][j].value() * geo.g(i, l).value();
        EXPECT_NEAR(v, 0.0, 1e-10);
      }
}

TEST(Curvature, RiemannMatchesFiniteDifferencesOfChristoffel) {
  const double a = 1.0;
  const Point p{0, 0.35, -0.2, 0.3, 0.25};
  const CurvatureBundle cb = curvature({Family::Ha, a}, p);
  const MetricFn g = [a](const Point& q) { return metric_components({Family::Ha, a}, q, 0).values(); };
  const double h = 1e-4;
  auto gam = [&](const Point& q) { return fd_christoffel(g, q, 4, 1e-5); };
  const auto g0 = gam(p);
  std::array<std::array<Eigen::MatrixXd, 5>, 4> dgam;  // dgam[i][l](k, j) = d_i Gamma^l_kj
  for (int i = 0; i < 4; ++i) {
    Point u = p, d = p;
    u[i + 1] += h;
    d[i + 1] -= h;
    const auto gu = gam(u), gd = gam(d);
    for (int l = 0; l < 4; ++l) dgam[i][l] = (gu[l] - gd[l]) / (2 * h);
  }
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double want = dgam[i][l](j, k) - dgam[j][l](i, k);
          for (int m = 0; m < 4; ++m) want += g0[l](i, m) * g0[m](j, k) - g0[l](j, m) * g0[m](i, k);
          EXPECT_NEAR(cb.riemann(l, k, i, j), want, 1e-4);
        }
}

TEST(Curvature, RoundSphere) {
  const Point p{0, 0.3, -0.1, 0.2, 0.4};
  const CurvatureBundle cb = curvature(local_geometry(sphere_metric(seed(p))));
  EXPECT_LT((cb.ricci - 3.0 * cb.metric).norm(), 1e-12);
  EXPECT_NEAR(cb.scalar, 12.0, 1e-12);
  EXPECT_LT(cb.weyl.max_abs(), 1e-12);
}

TEST(Curvature, MinkowskiIsFlat) {
  const CurvatureBundle cb = curvature({Family::Minkowski, 1.0}, Point{0.3, 1, 2, 3, 4});
  EXPECT_EQ(cb.riemann.max_abs(), 0.0);
  EXPECT_EQ(cb.weyl.max_abs(), 0.0);
}

TEST(Curvature, GatildeRicciFlatOutsideAndFlatInside) {
  for (const Point& p : sample(SampleRegion::B_a, 1.0, 200, 3)) {
    const CurvatureBundle cb = curvature({Family::GaTilde, 1.0}, p);
    EXPECT_LT(cb.ricci.cwiseAbs().maxCoeff(), 1e-8 * (1 + cb.riemann.max_abs()));
  }
  for (const Point& p : sample(SampleRegion::L_interior, 1.0, 50, 5))
    EXPECT_LT(curvature({Family::GaTilde, 1.0}, p).riemann.max_abs(), 1e-8);
}

TEST(Curvature, FlatConnectionForms) {
  const Point p{0.3, 0.1, 0.2, 0.3, 0.4};
  const LocalGeometry geo = local_geometry({Family::Minkowski, 1.0}, p);
  FrameVecs u{};
  for (int i = 0; i < 5; ++i)
    for (int c = 0; c < 5; ++c) u[i][c] = RJet(i == c ? 1.0 : 0.0);
  const ConnectionForms cf = connection_forms(u, geo);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) EXPECT_EQ(cf.on_frame(u, i, j, k), 0.0);
  u[1][2] = RJet(0.5);
  EXPECT_THROW(connection_forms(u, geo), FrameMismatchError);
}

struct Eh {
  FrameVecs frame;
  LocalGeometry geo;
  CurvatureBundle curv;
};

Eh eh_at(const Point& y, double a) {
  Eh e;
  const JetPoint yj = seed(y);
  e.frame = eh_frame(yj, a);
  e.geo = local_geometry(metric_components({Family::EguchiHanson, a}, yj));
  e.curv = curvature(e.geo);
  return e;
}

TEST(Curvature, EguchiHansonConnectionAtRadiusTwo) {
  const Eh e = eh_at({0, 2, 0, 0, 0}, 1.0);
  const ConnectionForms cf = connection_forms(e.frame, e.geo);
  EXPECT_NEAR(cf.on_frame(e.frame, 0, 1, 1), -std::sqrt(0.9375) / 2, 1e-12);
  const double beta = std::sqrt(0.9375), R = 2.0;
  const double gamma = beta / R + 2 * std::pow(1 / R, 4) / (R * beta);
  EXPECT_NEAR(cf.on_frame(e.frame, 0, 3, 3), -gamma, 1e-12);
  EXPECT_NEAR(cf.on_frame(e.frame, 1, 2, 3), -gamma, 1e-12);
}

TEST(Curvature, EguchiHansonCurvatureMagnitudes) {
  const Eh e = eh_at({0, 2, 0, 0, 0}, 1.0);
  const Tensor4 om = curvature_forms(e.frame, e.curv);
  // |Omega_14(f1, f4)| = 4 a^4 / R^6, |Omega_12(f1, f2)| = 2 a^4 / R^6.
  EXPECT_NEAR(std::abs(om(0, 3, 0, 3)), 0.0625, 1e-12);
  EXPECT_NEAR(std::abs(om(0, 1, 0, 1)), 0.03125, 1e-12);
  EXPECT_NEAR(std::abs(om(0, 1, 2, 3)), 0.03125, 1e-12);
}

TEST(Curvature, EguchiHansonStructureEquationsAndDuality) {
  Rng rng(9);
  for (int n = 0; n < 20; ++n) {
    Point y = rng.point(-2, 2);
    y[0] = 0;
    if (std::sqrt(y[1] * y[1] + y[2] * y[2] + y[3] * y[3] + y[4] * y[4]) < 1.2) continue;
    const Eh e = eh_at(y, 1.0);
    const ConnectionForms cf = connection_forms(e.frame, e.geo);
    const Tensor4 om = curvature_forms(e.frame, e.curv);
    EXPECT_LT((om - curvature_forms_structure(e.frame, cf)).max_abs(), 1e-10);
    EXPECT_LT(first_structure_residual(e.frame, e.geo, cf).max_abs(), 1e-10);
    EXPECT_LT(e.curv.ricci.cwiseAbs().maxCoeff(), 1e-10);
    const AsdSplit s = asd_split(om, 4, frame_orientation(e.frame));
    EXPECT_LT(s.w_plus.norm(), 1e-9 * s.w_minus.norm());
    // The frame f_1..f_4 is negatively oriented, so in its own orientation
    // the roles swap.
    EXPECT_LT(frame_orientation(e.frame), 0.0);
    const AsdSplit t = asd_split(om, 4, 1.0);
    EXPECT_LT(t.w_minus.norm(), 1e-9 * t.w_plus.norm());
  }
}

TEST(Curvature, AsdSplitOfFlatAndWrongDimension) {
  const Tensor4 zero{};
  const AsdSplit s = asd_split(zero, 4);
  EXPECT_EQ(s.w_plus.norm(), 0.0);
  EXPECT_EQ(s.w_minus.norm(), 0.0);
  EXPECT_THROW(asd_split(zero, 5), DimensionError);
}

TEST(Curvature, ConformalKillingField) {
  for (const Point& p : sample(SampleRegion::Closure, 1.0, 100, 11)) {
    const JetPoint x = seed(p);
    const LocalGeometry geo = local_geometry(metric_components({Family::Ga, 1.0}, x));
    const Eigen::MatrixXd lv = lie_derivative_metric(field_V(x), geo.g);
    EXPECT_LT((lv + 4 * p[0] * geo.g.values()).norm(), 1e-9);
    EXPECT_NEAR(divergence(field_V(x), geo), -10 * p[0], 1e-9);
  }
  const Point p{0.3, 0.2, 0.1, -0.4, 0.5};
  const JetPoint x = seed(p);
  const JetMatrix eta = JetMatrix::minkowski();
  EXPECT_LT((lie_derivative_metric(field_V(x), eta) + 4 * p[0] * eta.values()).norm(), 1e-14);
  VecJ t{};
  for (int i = 0; i < 5; ++i) t[i] = RJet(0.1 * (i + 1));
  EXPECT_LT(lie_derivative_metric(t, eta).norm(), 1e-15);
}

TEST(Curvature, HessianAndTraceFree) {
  const Point p{0.3, 0.2, 0.1, -0.4, 0.5};
  const JetPoint x = seed(p);
  const LocalGeometry geo = local_geometry({Family::Minkowski, 1.0}, p);
  const Eigen::MatrixXd h = hessian_scalar(x[0] * x[0], geo);
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(5, 5);
  want(0, 0) = 2;
  EXPECT_LT((h - want).norm(), 1e-14);
  EXPECT_NEAR(laplacian_scalar(x[0] * x[0], geo), -2.0, 1e-14);
  Rng rng(13);
  const LocalGeometry ga = local_geometry({Family::Ga, 1.0}, Point{0.1, 0.4, 0.2, 0.1, -0.3});
  Eigen::MatrixXd t(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) t(i, j) = rng.uniform(-1, 1);
  const Eigen::MatrixXd tf = trace_free(t + t.transpose(), ga.g.values());
  EXPECT_NEAR((ga.ginv.values() * tf).trace(), 0.0, 1e-12);
}

TEST(Curvature, ConformalRicciIdentity) {
  for (const Point& p : sample(SampleRegion::B_a, 1.0, 100, 17))
    EXPECT_LT(conformal_ricci_check(p, 1.0).cwiseAbs().maxCoeff(), 1e-8);
  for (const Point& p : sample(SampleRegion::L_interior, 1.0, 50, 19)) {
    EXPECT_LT(conformal_ricci_check(p, 1.0).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT(conformal_ricci_check_flat(p).cwiseAbs().maxCoeff(), 1e-8);
  }
  EXPECT_THROW(conformal_ricci_check({1, 1, 0, 0, 0}, 1.0), SingularError);
}

TEST(Curvature, WeylScalesWithTheConformalFactor) {
  for (const Point& p : sample(SampleRegion::B_a, 1.0, 50, 23)) {
    const WeylPair w = weyl_pair(p, 1.0);
    const Tensor4 d = w.ga - (w.d * w.d) * w.gatilde;
    EXPECT_LT(d.norm(), 1e-8 * (1 + w.ga.norm()));
  }
}

TEST(Curvature, WeylDecayTowardTheCone) {
  const DecayFit fit = weyl_decay({0.5, 0.3, 0.0, 0.4, 0.0}, 1.0);
  EXPECT_GE(fit.exponent, 1.85);
  EXPECT_LE(fit.exponent, 2.15);
  EXPECT_LT(curvature({Family::Ga, 1.0}, Point{0.9, 0.3, 0.2, 0.1, 0}).weyl.max_abs(), 1e-12);
}

}  // namespace
}  // namespace twz
