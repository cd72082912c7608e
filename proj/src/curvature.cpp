#include "twz/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "twz/clifford.hpp"
#include "twz/errors.hpp"

namespace twz {

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double Tensor4::norm() const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Tensor4 operator-(const Tensor4& a, const Tensor4& b) {
  Tensor4 c = a;
  for (size_t i = 0; i < c.v.size(); ++i) c.v[i] -= b.v[i];
  return c;
}

Tensor4 operator*(double s, const Tensor4& a) {
  Tensor4 c = a;
  for (double& x : c.v) x *= s;
  return c;
}

LocalGeometry local_geometry(const JetMatrix& g) {
  LocalGeometry geo;
  geo.g = g;
  geo.ginv = inverse(g);
  const int n = g.dim;
  geo.gamma.dim = n;
  // dg[c][i][j] = d_c g_ij
  std::array<std::array<std::array<RJet, 5>, 5>, 5> dg{};
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) dg[c][i][j] = dg[c][j][i] = diff(g(i, j), g.var(c));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::array<RJet, 5> low{};
      for (int l = 0; l < n; ++l) low[l] = 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
      for (int k = 0; k < n; ++k) {
        RJet s(0.0);
        for (int l = 0; l < n; ++l) s += geo.ginv(k, l) * low[l];
        geo.gamma.g[k][i][j] = geo.gamma.g[k][j][i] = s;
      }
    }
  return geo;
}

LocalGeometry local_geometry(const MetricSpec& spec, const Point& p) {
  return local_geometry(metric_components(spec, p, kMaxOrder));
}

CurvatureBundle curvature(const LocalGeometry& geo) {
  const int n = geo.dim();
  CurvatureBundle c;
  c.dim = n;
  c.riemann.dim = c.riemann_low.dim = c.weyl.dim = n;
  c.metric = geo.g.values();
  c.inverse = geo.ginv.values();
  double gam[5][5][5];
  double dgam[5][5][5][5];  // d_i Gamma^l_jk at [i][l][j][k]
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        gam[l][j][k] = geo.gamma.g[l][j][k].value();
        for (int i = 0; i < n; ++i) dgam[i][l][j][k] = geo.gamma.g[l][j][k].d(geo.g.var(i));
      }
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          double s = dgam[i][l][j][k] - dgam[j][l][i][k];
          for (int m = 0; m < n; ++m) s += gam[l][i][m] * gam[m][j][k] - gam[l][j][m] * gam[m][i][k];
          c.riemann(l, k, i, j) = s;
          c.riemann(l, k, j, i) = -s;
        }
  const Eigen::MatrixXd& g = c.metric;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += g(l, m) * c.riemann(m, k, i, j);
          c.riemann_low(l, k, i, j) = s;
        }
  c.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) c.ricci(k, j) += c.riemann(i, k, i, j);
  c.scalar = (c.inverse.cwiseProduct(c.ricci)).sum();
  const double p = 1.0 / (n - 2);
  const double q = c.scalar / ((n - 1.0) * (n - 2.0));
  const Eigen::MatrixXd& ric = c.ricci;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          c.weyl(l, k, i, j) =
              c.riemann_low(l, k, i, j) -
              p * (g(l, i) * ric(k, j) - g(l, j) * ric(k, i) + g(k, j) * ric(l, i) -
                   g(k, i) * ric(l, j)) +
              q * (g(l, i) * g(k, j) - g(l, j) * g(k, i));
  return c;
}

CurvatureBundle curvature(const MetricSpec& spec, const Point& p) {
  return curvature(local_geometry(spec, p));
}

namespace {

// Sign of g(F_i, F_i) after checking orthonormality.
std::array<double, 5> frame_signs(const FrameVecs& frame, const JetMatrix& g) {
  const int n = g.dim;
  Eigen::MatrixXd gr = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd gv = g.values();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) gr(i, j) += gv(a, b) * frame[i][a].value() * frame[j][b].value();
  std::array<double, 5> s{};
  for (int i = 0; i < n; ++i) {
    s[i] = gr(i, i) < 0 ? -1.0 : 1.0;
    gr(i, i) -= s[i];
  }
  if (gr.cwiseAbs().maxCoeff() > 1e-8) throw FrameMismatchError("frame is not orthonormal");
  return s;
}

double eval_on(const VecJ& covector, const VecJ& v, int n) {
  double s = 0.0;
  for (int a = 0; a < n; ++a) s += covector[a].value() * v[a].value();
  return s;
}

// d alpha (F_k, F_l) for a covector field with jet components.
double d_form(const VecJ& alpha, const VecJ& fk, const VecJ& fl, const JetMatrix& g) {
  const int n = g.dim;
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double dab = alpha[b].d(g.var(a)) - alpha[a].d(g.var(b));
      s += dab * fk[a].value() * fl[b].value();
    }
  return s;
}

}  // namespace

double ConnectionForms::on_frame(const FrameVecs& frame, int i, int j, int k) const {
  return eval_on(omega[i][j], frame[k], dim);
}

ConnectionForms connection_forms(const FrameVecs& frame, const LocalGeometry& geo) {
  const int n = geo.dim();
  frame_signs(frame, geo.g);
  ConnectionForms cf;
  cf.dim = n;
  // nabla_a F_i, components c.
  std::array<std::array<VecJ, 5>, 5> nab{};
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        RJet s = diff(frame[i][c], geo.g.var(a));
        for (int b = 0; b < n; ++b) s += geo.gamma.g[c][a][b] * frame[i][b];
        nab[i][a][c] = s;
      }
  // Lowered frame vectors g(F_j, .).
  std::array<VecJ, 5> low{};
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) {
      RJet s(0.0);
      for (int d = 0; d < n; ++d) s += geo.g(c, d) * frame[j][d];
      low[j][c] = s;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) {
        RJet s(0.0);
        for (int c = 0; c < n; ++c) s += nab[i][a][c] * low[j][c];
        cf.omega[i][j][a] = s;
      }
  return cf;
}

Tensor4 curvature_forms(const FrameVecs& frame, const CurvatureBundle& curv) {
  const int n = curv.dim;
  Tensor4 out;
  out.dim = n;
  double f[5][5];
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) f[i][a] = frame[i][a].value();
  // Omega_ij(F_k, F_l) = R_{m c a b} F_j^m F_i^c F_k^a F_l^b.
  Tensor4 partial;  // contracted over the last two slots: (m, c, k, l)
  for (int m = 0; m < n; ++m)
    for (int c = 0; c < n; ++c)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += curv.riemann_low(m, c, a, b) * f[k][a] * f[l][b];
          partial(m, c, k, l) = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            for (int c = 0; c < n; ++c) s += partial(m, c, k, l) * f[j][m] * f[i][c];
          out(i, j, k, l) = s;
        }
  return out;
}

Tensor4 curvature_forms_structure(const FrameVecs& frame, const ConnectionForms& cf) {
  const int n = cf.dim;
  // 5d frames are Lorentzian with F_0 timelike, 4d frames Riemannian.
  std::array<double, 5> eps_k{};
  for (int k = 0; k < n; ++k) eps_k[k] = (n == 5 && k == 0) ? -1.0 : 1.0;
  double w[5][5][5];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) w[i][j][k] = cf.on_frame(frame, i, j, k);
  JetMatrix dummy = JetMatrix::zero(n);
  Tensor4 out;
  out.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = d_form(cf.omega[i][j], frame[k], frame[l], dummy);
          for (int m = 0; m < n; ++m)
            s -= eps_k[m] * (w[i][m][k] * w[m][j][l] - w[i][m][l] * w[m][j][k]);
          out(i, j, k, l) = s;
        }
  return out;
}

Tensor4 first_structure_residual(const FrameVecs& frame, const LocalGeometry& geo,
                                 const ConnectionForms& cf) {
  const int n = geo.dim();
  const std::array<double, 5> eps_i = frame_signs(frame, geo.g);
  Tensor4 out;
  out.dim = n;
  for (int i = 0; i < n; ++i) {
    VecJ theta{};
    for (int a = 0; a < n; ++a) {
      RJet s(0.0);
      for (int b = 0; b < n; ++b) s += geo.g(a, b) * frame[i][b];
      theta[a] = eps_i[i] * s;
    }
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const double d = d_form(theta, frame[k], frame[l], geo.g);
        const double rhs =
            eps_i[i] * (cf.on_frame(frame, i, l, k) - cf.on_frame(frame, i, k, l));
        out(i, k, l, 0) = d - rhs;
      }
  }
  return out;
}

namespace {

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

std::array<Eigen::Matrix4d, 3> asd_basis() {
  std::array<Eigen::Matrix4d, 3> out;
  auto form = [](int a, int b, int c, int d, double sign) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(a, b) = 1.0;
    m(b, a) = -1.0;
    m(c, d) += -sign;
    m(d, c) += sign;
    return m;
  };
  out[0] = form(0, 1, 2, 3, 1.0);  // F12 - F34
  out[1] = form(0, 2, 3, 1, 1.0);  // F13 - F42
  out[2] = form(0, 3, 1, 2, 1.0);  // F14 - F23
  return out;
}

double frame_orientation(const FrameVecs& frame) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c) m(c, i) = frame[i][c].value();
  return m.determinant() < 0.0 ? -1.0 : 1.0;
}

AsdSplit asd_split(const Tensor4& omega_frame, int dim, double orientation) {
  if (dim != 4) throw DimensionError("anti-self-dual split needs a 4d frame");
  Eigen::Matrix<double, 6, 6> c;
  for (int A = 0; A < 6; ++A)
    for (int B = 0; B < 6; ++B)
      c(A, B) = omega_frame(kPairs[A][0], kPairs[A][1], kPairs[B][0], kPairs[B][1]);
  // Orthonormal bases of the (anti-)self-dual 2-forms for the orientation F1 F2 F3 F4.
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<double, 6, 3> sd = Eigen::Matrix<double, 6, 3>::Zero();
  Eigen::Matrix<double, 6, 3> asd = Eigen::Matrix<double, 6, 3>::Zero();
  sd(0, 0) = h, sd(5, 0) = h;
  sd(1, 1) = h, sd(4, 1) = -h;
  sd(2, 2) = h, sd(3, 2) = h;
  asd(0, 0) = h, asd(5, 0) = -h;
  asd(1, 1) = h, asd(4, 1) = h;
  asd(2, 2) = h, asd(3, 2) = -h;
  AsdSplit s;
  s.w_plus = sd.transpose() * c * sd;
  s.w_minus = asd.transpose() * c * asd;
  s.w_plus -= (s.w_plus.trace() / 3.0) * Eigen::Matrix3d::Identity();
  s.w_minus -= (s.w_minus.trace() / 3.0) * Eigen::Matrix3d::Identity();
  if (orientation < 0.0) std::swap(s.w_plus, s.w_minus);
  return s;
}

Eigen::MatrixXd lie_derivative_metric(const VecJ& x, const JetMatrix& g) {
  const int n = g.dim;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += x[k].value() * g(i, j).d(g.var(k));
        s += g(k, j).value() * x[k].d(g.var(i));
        s += g(i, k).value() * x[k].d(g.var(j));
      }
      out(i, j) = s;
    }
  return out;
}

double divergence(const VecJ& x, const LocalGeometry& geo) {
  const int n = geo.dim();
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += x[k].d(geo.g.var(k));
    for (int j = 0; j < n; ++j) s += geo.gamma.g[k][k][j].value() * x[j].value();
  }
  return s;
}

Eigen::MatrixXd hessian_scalar(const RJet& u, const LocalGeometry& geo) {
  const int n = geo.dim();
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = u.d(geo.g.var(i), geo.g.var(j));
      for (int k = 0; k < n; ++k) s -= geo.gamma.g[k][i][j].value() * u.d(geo.g.var(k));
      h(i, j) = s;
    }
  return h;
}

double laplacian_scalar(const RJet& u, const LocalGeometry& geo) {
  return geo.ginv.values().cwiseProduct(hessian_scalar(u, geo)).sum();
}

Eigen::MatrixXd trace_free(const Eigen::MatrixXd& t, const Eigen::MatrixXd& g) {
  const double tr = g.inverse().cwiseProduct(t).sum();
  return t - (tr / static_cast<double>(g.rows())) * g;
}

Eigen::VectorXd gradient(const RJet& u, const LocalGeometry& geo) {
  const int n = geo.dim();
  Eigen::VectorXd du(n);
  for (int i = 0; i < n; ++i) du(i) = u.d(geo.g.var(i));
  return geo.ginv.values() * du;
}

namespace {

// Ric(D^2 gt) - [-(n-2)(Hess mu - dmu^2) - (Lap mu + (n-2)|dmu|^2) gt], Ric(gt) assumed 0.
Eigen::MatrixXd conformal_ricci_residual(const JetMatrix& g_full, const JetMatrix& gt,
                                         const RJet& mu_jet) {
  const LocalGeometry geo_t = local_geometry(gt);
  const CurvatureBundle curv = curvature(local_geometry(g_full));
  const int n = gt.dim;
  Eigen::VectorXd dmu(n);
  for (int i = 0; i < n; ++i) dmu(i) = mu_jet.d(i);
  const Eigen::MatrixXd gtv = gt.values();
  const Eigen::MatrixXd hess = hessian_scalar(mu_jet, geo_t);
  const double lap = laplacian_scalar(mu_jet, geo_t);
  const double dmu2 = dmu.dot(geo_t.ginv.values() * dmu);
  const Eigen::MatrixXd rhs =
      -(n - 2.0) * (hess - dmu * dmu.transpose()) - (lap + (n - 2.0) * dmu2) * gtv;
  return curv.ricci - rhs;
}

}  // namespace

Eigen::MatrixXd conformal_ricci_check(const Point& p, double a) {
  const JetPoint x = seed(p);
  const RJet m = mu(x);
  return conformal_ricci_residual(metric_components({Family::Ga, a}, x),
                                  metric_components({Family::GaTilde, a}, x), m);
}

Eigen::MatrixXd conformal_ricci_check_flat(const Point& p) {
  const JetPoint x = seed(p);
  const RJet m = mu(x);
  const JetMatrix eta = JetMatrix::minkowski();
  JetMatrix g = eta;
  const RJet f = exp(2.0 * m);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) g(i, j) = eta(i, j) * f;
  return conformal_ricci_residual(g, eta, m);
}

WeylPair weyl_pair(const Point& p, double a) {
  if (classify(p, a).tag != RegionTag::B_a) throw DomainError("Weyl comparison runs on B_a");
  WeylPair w;
  w.ga = curvature({Family::Ga, a}, p).weyl;
  w.gatilde = curvature({Family::GaTilde, a}, p).weyl;
  w.d = cone_gap(p);
  return w;
}

DecayFit weyl_decay(const Point& base_on_lo, double a, int n, int drop, double d_max) {
  const double x0 = base_on_lo[0];
  Eigen::Vector4d dir;
  for (int i = 0; i < 4; ++i) dir(i) = base_on_lo[i + 1];
  if (dir.norm() == 0.0 || x0 == 0.0) throw NonTransversalError("base point must lie on L_o off 0");
  dir.normalize();
  DecayFit fit;
  std::vector<double> lx, ly;
  for (int k = 0; k < n; ++k) {
    const double d = d_max * std::pow(0.5, k);
    const double r = std::abs(x0) + d;
    Point p{x0, r * dir(0), r * dir(1), r * dir(2), r * dir(3)};
    const double w = curvature({Family::Ga, a}, p).weyl.max_abs();
    const double ro = ro_value(p);
    fit.distances.push_back(ro);
    fit.norms.push_back(w);
    if (k < n - drop) {
      lx.push_back(std::log(ro));
      ly.push_back(std::log(w));
    }
  }
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

}  // namespace twz
