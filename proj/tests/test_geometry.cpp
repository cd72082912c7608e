#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "twz/errors.hpp"
#include "twz/geometry.hpp"

namespace twz {
namespace {

using testing::Rng;
using testing::fd1;
using testing::fd2;

double plain_r(const Point& p) { return std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3] + p[4] * p[4]); }

Point random_ba(Rng& rng, double a) {
  for (;;) {
    const Point p = rng.point(-1.0 / a, 1.0 / a);
    if (classify(p, a).tag == RegionTag::B_a && std::abs(cone_gap(p)) > 1e-2) return p;
  }
}

TEST(Geometry, Classify) {
  const Region r1 = classify({0.5, 0, 0, 0, 0}, 1.0);
  EXPECT_EQ(r1.tag, RegionTag::L_interior);
  EXPECT_TRUE(r1.on_axis_r0);
  EXPECT_EQ(classify({1, 1, 0, 0, 0}, 1.0).tag, RegionTag::L_boundary);
  EXPECT_EQ(classify({0, 0.5, 0, 0, 0}, 1.0).tag, RegionTag::B_a);
  EXPECT_EQ(classify({0, 2, 0, 0, 0}, 1.0).tag, RegionTag::OutsideClosure);
  EXPECT_TRUE(classify({0, 0, 0, 0, 0}, 1.0).at_origin);
}

TEST(Geometry, RadialR) {
  EXPECT_DOUBLE_EQ(radial_r(seed({0, 3, 4, 0, 0})).value(), 5.0);
  const RJet r = radial_r(seed({0, 1, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(r.d(1), 1.0);
  const Point p{0, 1, 0, 0, 0};
  EXPECT_NEAR(r.d(2, 2), fd2(plain_r, p, 2, 2, 1e-4), 1e-6);
}

TEST(Geometry, RadialRo) {
  EXPECT_DOUBLE_EQ(radial_ro(seed({0, 1, 0, 0, 0})).value(), 1.0);
  EXPECT_DOUBLE_EQ(radial_ro(seed({1, 2, 0, 0, 0})).value(), 1.5);
  const RJet in_l = radial_ro(seed({0.9, 0.3, 0.1, 0, 0}));
  EXPECT_EQ(in_l.value(), 0.0);
  for (int i = 0; i < kVars; ++i) EXPECT_EQ(in_l.d(i), 0.0);
  EXPECT_THROW(radial_ro(seed({1, 1, 0, 0, 0})), AmbiguousError);
}

TEST(Geometry, RoMatchesFiniteDifferences) {
  Rng rng(3);
  auto ro = [](const Point& q) { return cone_gap(q) / plain_r(q); };
  for (int n = 0; n < 20; ++n) {
    const Point p = random_ba(rng, 1.0);
    const RJet j = radial_ro(seed(p));
    for (int i = 0; i < kVars; ++i) {
      EXPECT_NEAR(j.d(i), fd1(ro, p, i, 1e-6), 1e-6 * (1 + std::abs(j.d(i))));
      for (int k = 0; k < kVars; ++k)
        EXPECT_NEAR(j.d(i, k), fd2(ro, p, i, k, 1e-4), 1e-4 * (1 + std::abs(j.d(i, k))));
    }
  }
}

TEST(Geometry, Beta) {
  EXPECT_EQ(beta(seed({0.9, 0.3, 0, 0, 0}), 1.0).value(), 1.0);
  EXPECT_NEAR(beta(seed({0, 0.5, 0, 0, 0}), 1.0).value(), std::sqrt(0.9375), 1e-15);
  auto plain = [](const Point& q) {
    const double ro = cone_gap(q) / plain_r(q);
    return std::sqrt(1 - std::pow(ro, 4));
  };
  const Point p{0, 0.5, 0, 0, 0};
  EXPECT_LT(testing::rel_err(beta(seed(p), 1.0).d(1), fd1(plain, p, 1, 1e-6)), 1e-6);
  EXPECT_THROW(beta(seed({0, 1.5, 0, 0, 0}), 1.0), DomainError);
}

TEST(Geometry, SigmaFormsDualToRotations) {
  Rng rng(5);
  for (int n = 0; n < 100; ++n) {
    const Point p = rng.point(-1, 1);
    const JetPoint x = seed(p, 0);
    const auto s = sigma_forms(x);
    const double x1 = p[1], x2 = p[2], x3 = p[3], x4 = p[4];
    const double r2 = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
    // Rotations X_i with sigma_i(X_j) = delta_ij.
    const std::array<std::array<double, 5>, 3> X = {{{0, -x2, x1, -x4, x3},
                                                     {0, -x3, x4, x1, -x2},
                                                     {0, -x4, -x3, x2, x1}}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double v = 0;
        for (int c = 0; c < 5; ++c) v += s[i][c].value() * X[j][c];
        EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-12) << i << j;
      }
    // g0 = -dx0^2 + dr^2 + r^2 (sigma_1^2 + sigma_2^2 + sigma_3^2).
    const VecJ dr = dr_form(x);
    for (int a = 1; a < 5; ++a)
      for (int b = 1; b < 5; ++b) {
        double g = dr[a].value() * dr[b].value();
        for (int i = 0; i < 3; ++i) g += r2 * s[i][a].value() * s[i][b].value();
        EXPECT_NEAR(g, a == b ? 1.0 : 0.0, 1e-12);
      }
  }
  const auto s = sigma_forms(seed({0, 1, 0, 0, 0}, 0));
  EXPECT_DOUBLE_EQ(s[0][2].value(), 1.0);
}

TEST(Geometry, AlphaForm) {
  Rng rng(7);
  for (int n = 0; n < 100; ++n) {
    const JetPoint x = seed(rng.point(-1, 1), 0);
    EXPECT_NEAR(pair(alpha_form(x), field_V(x)).value(), 0.0, 1e-12);
  }
  const Point p{0.3, 0.2, -0.4, 0.5, 0.1};
  const JetPoint x = seed(p, 0);
  const double r = plain_r(p), x0 = p[0];
  const double want = -std::pow(r * r + x0 * x0, 2) + 4 * x0 * x0 * r * r;
  EXPECT_NEAR(pair(alpha_form(x), field_T(x)).value(), want, 1e-12);
  const Point q{0, 0.3, 0.4, 0, 0};
  const VecJ al = alpha_form(seed(q, 0));
  const VecJ drq = dr_form(seed(q, 0));
  for (int c = 0; c < 5; ++c) EXPECT_NEAR(al[c].value(), 0.25 * drq[c].value(), 1e-15);
}

TEST(Geometry, MetricsOnTheCone) {
  const Eigen::MatrixXd eta = JetMatrix::minkowski().values();
  EXPECT_TRUE(metric_components({Family::Ga, 1.0}, Point{0.9, 0.3, 0.2, 0.1, 0}).values().isApprox(eta));
  EXPECT_TRUE(metric_components({Family::Minkowski, 1.0}, Point{0.1, 3, 2, 1, 0}).values().isApprox(eta));
  const Point p{0, 0.5, 0, 0, 0};
  const Eigen::MatrixXd g = metric_components({Family::Ga, 1.0}, p).values();
  const VecJ V = field_V(seed(p, 0));
  Eigen::VectorXd v(5);
  for (int i = 0; i < 5; ++i) v(i) = V[i].value();
  EXPECT_NEAR(v.dot(g * v), -0.0625, 1e-15);
}

TEST(Geometry, DecomposeGa) {
  Rng rng(11);
  for (int n = 0; n < 100; ++n) {
    const Point p = random_ba(rng, 1.0);
    const JetPoint x = seed(p, 0);
    const GaParts parts = decompose_ga(x, 1.0);
    const Eigen::MatrixXd sum = parts.g0.values() - parts.omega.values() + parts.rho.values();
    EXPECT_LT((sum - metric_components({Family::Ga, 1.0}, x).values()).norm(), 1e-12);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(parts.rho.values());
    EXPECT_LT(svd.singularValues()(1), 1e-12);
  }
  const GaParts on_l = decompose_ga(seed({0.9, 0.3, 0, 0, 0}, 0), 1.0);
  EXPECT_EQ(on_l.omega.values().norm(), 0.0);
  EXPECT_EQ(on_l.rho.values().norm(), 0.0);
}

TEST(Geometry, PsiMap) {
  const JetPoint x = seed({1, 2, 0, 0, 0}, 0);
  EXPECT_NEAR(coord_s(x).value(), -1.0 / 3, 1e-15);
  EXPECT_NEAR(coord_R(x).value(), 2.0 / 3, 1e-15);
  Rng rng(13);
  for (int n = 0; n < 100; ++n) {
    const Point p = rng.point(-1, 1);
    if (std::abs(cone_gap(p)) < 1e-2) continue;
    const Point q = psi_map(psi_map(p));
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(q[i], p[i], 1e-12);
  }
}

TEST(Geometry, PsiJacobianMatchesFiniteDifferences) {
  const Point p{0.2, 0.5, -0.3, 0.4, 0.1};
  const Eigen::MatrixXd j = psi_jacobian(seed(p, 0)).values();
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) {
      auto f = [i](const Point& q) { return psi_map(q)[i]; };
      EXPECT_NEAR(j(i, k), fd1(f, p, k, 1e-6), 1e-7);
    }
}

TEST(Geometry, PsiPushesTAndVToCoordinateFields) {
  const Point p{0.2, 0.5, -0.3, 0.4, 0.1};
  const JetPoint x = seed(p, 0);
  const Eigen::MatrixXd j = psi_jacobian(x).values();
  Eigen::VectorXd t(5), v(5);
  for (int i = 0; i < 5; ++i) {
    t(i) = field_T(x)[i].value();
    v(i) = field_V(x)[i].value();
  }
  const Point y = psi_map(p);
  const double R = plain_r(y);
  Eigen::VectorXd d_dr(5), d_ds(5);
  d_dr << 0, y[1] / R, y[2] / R, y[3] / R, y[4] / R;
  d_ds << 1, 0, 0, 0, 0;
  EXPECT_LT((j * t - d_dr).norm(), 1e-12);
  EXPECT_LT((j * v - d_ds).norm(), 1e-12);
}

}  // namespace
}  // namespace twz
