#include "twz/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "twz/clifford.hpp"
#include "twz/curvature.hpp"
#include "twz/errors.hpp"
#include "twz/frames.hpp"
#include "twz/geometry.hpp"
#include "twz/regularity.hpp"
#include "twz/sampling.hpp"
#include "twz/spingeo.hpp"

namespace twz {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

double nres(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / (1.0 + a.norm() + b.norm());
}

double nres(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)); }

double tnres(const Tensor4& a, const Tensor4& b) {
  return (a - b).norm() / (1.0 + a.norm() + b.norm());
}

Eigen::MatrixXd eta5() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(5, 5);
  m(0, 0) = -1.0;
  return m;
}

Eigen::VectorXd vec_values(const VecJ& v) {
  Eigen::VectorXd out(5);
  for (int i = 0; i < 5; ++i) out(i) = v[i].value();
  return out;
}

double sq(cplx b, cplx c) { return std::norm(b) + std::norm(c); }

// Results are written by index, so the outcome does not depend on scheduling.
// A thrown error marks that sample as failed with an infinite residual.
std::vector<double> parallel_map(int n, int threads, const std::function<double(int)>& f,
                                 std::string* first_error) {
  std::vector<double> out(n, 0.0);
  std::vector<std::string> errs(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (const std::exception& e) {
        out[i] = kInf;
        errs[i] = e.what();
      }
    }
  };
  const int t = std::max(1, std::min(threads, n));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error)
    for (const auto& e : errs)
      if (!e.empty()) {
        *first_error = e;
        break;
      }
  return out;
}

struct Outcome {
  std::vector<double> residuals;
  std::string note;
  bool forced_fail = false;
};

struct Ctx {
  const SuiteConfig& cfg;
  int threads = 1;
  std::uint64_t seed = 0;

  double a() const { return cfg.a; }
  Exclusions ex() const {
    Exclusions e;
    e.cone = cfg.exclude;
    e.axis = cfg.exclude;
    return e;
  }
  std::vector<Point> pts(SampleRegion r, int n, const SampleOptions& opt = {}) const {
    return sample(r, cfg.a, n, seed, ex(), opt);
  }
  std::vector<Point> pts(SampleRegion r, int n, const Exclusions& e,
                         const SampleOptions& opt = {}) const {
    return sample(r, cfg.a, n, seed, e, opt);
  }
  Outcome map(const std::vector<Point>& p, const std::function<double(const Point&)>& f) const {
    Outcome o;
    std::string err;
    o.residuals = parallel_map(static_cast<int>(p.size()), threads,
                               [&](int i) { return f(p[i]); }, &err);
    if (!err.empty()) o.note = "error: " + err;
    return o;
  }
  int scaled(int base) const {
    return std::max(1, static_cast<int>(std::lround(base * cfg.samples / 300.0)));
  }
  std::vector<std::pair<cplx, cplx>> pairs() const {
    std::vector<std::pair<cplx, cplx>> p = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const std::pair<cplx, cplx> user{cfg.b, cfg.c};
    if (std::find(p.begin(), p.end(), user) == p.end()) p.push_back(user);
    return p;
  }
};

// ---------------------------------------------------------------- helpers

JetMatrix perturbed_ga(const Point& p, double a, double eps) {
  JetMatrix g = metric_components({Family::Ga, a}, p);
  g(1, 2) += eps * 0.5;
  g(2, 1) += eps * 0.5;
  return g;
}

FrameVecs gram_schmidt(const FrameVecs& in, const JetMatrix& g) {
  FrameVecs out{};
  for (int i = 0; i < 5; ++i) {
    VecJ v = in[i];
    for (int j = 0; j < i; ++j) v = add(v, scale(out[j], -eps(j) * bilinear(g, in[i], out[j])));
    const RJet n = bilinear(g, v, v);
    out[i] = scale(v, 1.0 / sqrt(abs(n)));
  }
  return out;
}

double twistor_at(const Point& p, double a, cplx b, cplx c, FrameId frame, double perturb) {
  const JetPoint x = seed(p);
  if (perturb != 0.0) {
    const JetMatrix g = perturbed_ga(p, a, perturb);
    const FrameVecs fr = gram_schmidt(frame_eval(FrameId::e, x, a).vec, g);
    const SpinGeometry sg = spin_geometry(fr, FrameId::e, g);
    return twistor_residual(spinor_components(psi_bc(b, c, FrameId::e), x, a), sg).normalized();
  }
  const SpinGeometry sg = spin_geometry(frame, {Family::Ga, a}, p);
  return twistor_residual(spinor_components(psi_bc(b, c, frame), x, a), sg).normalized();
}

// 5x5 metric -ds^2 + g_EH(y) in Psi coordinates.
JetMatrix product_metric(const JetPoint& y, double a) {
  const JetMatrix eh = metric_components({Family::EguchiHanson, a}, y);
  JetMatrix p = JetMatrix::zero(5);
  p(0, 0) = RJet(-1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p(i + 1, j + 1) = eh(i, j);
  return p;
}

Eigen::MatrixXd pullback(const Eigen::MatrixXd& m, const Point& x) {
  const Eigen::MatrixXd j = psi_jacobian(seed(x, 0)).values();
  return j.transpose() * m * j;
}

Point on_cone(double t, double sign, const Eigen::VectorXd& unit4) {
  return {sign * t, t * unit4(0), t * unit4(1), t * unit4(2), t * unit4(3)};
}

Eigen::VectorXd random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v / v.norm();
}

Point to_point(const Eigen::VectorXd& v) { return {v(0), v(1), v(2), v(3), v(4)}; }

// Points on L_o (and the origin) for the degenerate-type checks.
std::vector<Point> cone_points(std::mt19937_64& rng, int n, double a) {
  std::uniform_real_distribution<double> ud(0.05, 0.9);
  std::vector<Point> out;
  out.push_back({0, 0, 0, 0, 0});
  for (int i = 0; i < n; ++i)
    out.push_back(on_cone(ud(rng) / a, i % 2 ? 1.0 : -1.0, random_unit(rng, 4)));
  return out;
}

// Base points on L_o with transversal directions.
std::vector<CrossingCurve> cone_curves(std::mt19937_64& rng, int n, double a) {
  std::uniform_real_distribution<double> ud(0.2, 0.6);
  std::vector<CrossingCurve> out;
  while (static_cast<int>(out.size()) < n) {
    const Point base = on_cone(ud(rng) / a, out.size() % 2 ? 1.0 : -1.0, random_unit(rng, 4));
    try {
      out.push_back(crossing_curve(base, to_point(random_unit(rng, 5)), 0.05 / a));
    } catch (const NonTransversalError&) {
    }
  }
  return out;
}

// ----------------------------------------------------------------- checks

Outcome clifford_relations(const Ctx&) {
  Outcome o;
  int bad = 0;
  for (const auto& r : gamma_relations()) bad += r.holds ? 0 : 1;
  o.residuals = {static_cast<double>(bad)};
  return o;
}

Outcome frame_e_orthonormal(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, std::max(500, cx.cfg.samples)), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    return nres(gram(frame_eval(FrameId::e, x, a).vec, metric_components({Family::Ga, a}, x)),
                eta5());
  });
}

Outcome frame_htilde_orthonormal(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Ca, cx.scaled(200)), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    return nres(gram(frame_htilde(x, a).vec, metric_components({Family::Ga, a}, x)), eta5());
  });
}

Outcome frame_etilde_f_kappa(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(200)), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    const FrameVecs et = frame_eval(FrameId::etilde, x, a).vec;
    const FrameVecs fk =
        frame_times(frame_eval(FrameId::f, x, a).vec, transform_eval(TransformId::kappa, x, a).vector_part);
    const FrameVecs de = frame_times(frame_eval(FrameId::e, x, a).vec, [&] {
      JetMatrix d = JetMatrix::identity(5);
      for (int i = 0; i < 5; ++i) d(i, i) = RJet(cone_gap(p));
      return d;
    }());
    double r = 0.0;
    for (int i = 0; i < 5; ++i) {
      r = std::max(r, nres(vec_values(et[i]), vec_values(fk[i])));
      r = std::max(r, nres(vec_values(et[i]), vec_values(de[i])));
    }
    return r;
  });
}

Outcome frame_etilde_orthonormal(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(200)), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    const JetMatrix g = metric_components({Family::GaTilde, a}, x);
    return std::max(nres(gram(frame_eval(FrameId::etilde, x, a).vec, g), eta5()),
                    nres(gram(frame_eval(FrameId::f, x, a).vec, g), eta5()));
  });
}

Outcome spin_lifts(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    double r = 0.0;
    const std::pair<TransformId, TransformId> pairs[] = {{TransformId::Gtilde, TransformId::G},
                                                         {TransformId::kappatilde, TransformId::kappa},
                                                         {TransformId::Qtilde, TransformId::Q}};
    for (const auto& [spin, vec] : pairs) {
      if (spin == TransformId::Qtilde && !in_Ca(p, a)) continue;
      const Mat5 m = lambda_check(values(transform_eval(spin, x, a).spin_part));
      r = std::max(r, nres(m, transform_eval(vec, x, a).vector_part.values()));
    }
    return r;
  });
}

Outcome boost_kappa_exp(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    const double t = boost_parameter(x).value();
    const Mat5 e01 = transform_eval(TransformId::E01, x, a).vector_part.values();
    return nres(matrix_exp(t * e01), transform_eval(TransformId::kappa, x, a).vector_part.values());
  });
}

Outcome boost_k2_q2(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Ca, cx.scaled(200)), [a](const Point& p) {
    const BoostCoeffs bc = boost_coeffs(seed(p, 0), a);
    const double k = bc.k.value(), q = bc.q.value();
    return nres(k * k - q * q, 1.0);
  });
}

Outcome product_gatilde_eh(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.cfg.samples), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    const Eigen::MatrixXd pm = product_metric(psi_map(x), a).values();
    return nres(metric_components({Family::GaTilde, a}, x).values(), pullback(pm, p));
  });
}

Outcome product_flat_in_cone(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::L_interior, cx.cfg.samples), [a](const Point& p) {
    const Eigen::MatrixXd g = metric_components({Family::GaTilde, a}, p).values();
    const LocalGeometry geo = local_geometry({Family::GaTilde, a}, p);
    const CurvatureBundle cb = curvature(geo);
    // R^l_kij is a difference of dGamma and Gamma Gamma terms, which grow
    // like D^-2 near the cone; measure it against their size.
    double scale = 0.0;
    for (const auto& m : geo.gamma.g)
      for (const auto& row : m)
        for (const RJet& x : row) {
          scale = std::max(scale, x.value() * x.value());
          for (int k = 0; k < 5; ++k) scale = std::max(scale, std::abs(x.d(k)));
        }
    // The pullback sums terms of size |J|^2 that cancel off the diagonal.
    const double jj = psi_jacobian(seed(p, 0)).values().squaredNorm();
    const double metric_res = (g - pullback(eta5(), p)).norm() / (1.0 + jj);
    return std::max(metric_res, cb.riemann.max_abs() / (1.0 + scale));
  });
}

Outcome product_s_direction(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const CurvatureBundle cb = curvature(local_geometry(product_metric(seed(psi_map(p)), a)));
    double mixed = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
          for (int l = 0; l < 5; ++l)
            if (i == 0 || j == 0 || k == 0 || l == 0)
              mixed = std::max(mixed, std::abs(cb.riemann_low(i, j, k, l)));
    return mixed / (1.0 + cb.riemann_low.max_abs());
  });
}

Outcome ricci_gatilde_flat(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.cfg.samples), [a](const Point& p) {
    const CurvatureBundle cb = curvature({Family::GaTilde, a}, p);
    return cb.ricci.cwiseAbs().maxCoeff() / (1.0 + cb.riemann.max_abs());
  });
}

struct EhData {
  FrameVecs frame;
  LocalGeometry geo;
  CurvatureBundle curv;
  double R = 0.0;
};

EhData eh_data(const Point& p, double a) {
  // Fresh jet variables in Psi coordinates: derivatives are taken along y.
  const JetPoint y = seed(psi_map(p));
  EhData d;
  d.frame = eh_frame(y, a);
  d.geo = local_geometry(metric_components({Family::EguchiHanson, a}, y));
  d.curv = curvature(d.geo);
  const Point yv = values(y);
  d.R = std::sqrt(yv[1] * yv[1] + yv[2] * yv[2] + yv[3] * yv[3] + yv[4] * yv[4]);
  return d;
}

Outcome eh_connection_forms(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const EhData d = eh_data(p, a);
    const ConnectionForms cf = connection_forms(d.frame, d.geo);
    const double R = d.R;
    const double beta = std::sqrt(1.0 - std::pow(a / R, 4));
    const double gamma = beta / R + 2.0 * std::pow(a / R, 4) / (R * beta);
    // omega_ij = c f^k, frame indices 0..3 for f_1..f_4.
    double expect[4][4][4] = {};
    expect[0][1][1] = expect[2][3][1] = -beta / R;
    expect[0][2][2] = -beta / R;
    expect[1][3][2] = beta / R;
    expect[0][3][3] = expect[1][2][3] = -gamma;
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const double got = cf.on_frame(d.frame, i, j, k);
          diff = std::max(diff, std::abs(got - expect[i][j][k]));
          scale = std::max({scale, std::abs(got), std::abs(expect[i][j][k])});
        }
    return diff / (1.0 + scale);
  });
}

Outcome eh_curvature_forms(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const EhData d = eh_data(p, a);
    const Tensor4 om = curvature_forms(d.frame, d.curv);
    const double c = 2.0 * std::pow(a, 4) / std::pow(d.R, 6);
    const auto lam = asd_basis();
    // Omega_12 = Omega_34 = -c l1, Omega_13 = -Omega_24 = -c l2,
    // Omega_14 = Omega_23 = 2c l3.
    std::array<std::array<Eigen::Matrix4d, 4>, 4> expect{};
    for (auto& row : expect)
      for (auto& m : row) m.setZero();
    expect[0][1] = expect[2][3] = -c * lam[0];
    expect[0][2] = -c * lam[1];
    expect[1][3] = c * lam[1];
    expect[0][3] = expect[1][2] = 2.0 * c * lam[2];
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            const double got = om(i, j, k, l);
            diff = std::max(diff, std::abs(got - expect[i][j](k, l)));
            scale = std::max({scale, std::abs(got), std::abs(expect[i][j](k, l))});
          }
    return diff / (1.0 + scale);
  });
}

Outcome eh_structure_equations(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const EhData d = eh_data(p, a);
    const ConnectionForms cf = connection_forms(d.frame, d.geo);
    const Tensor4 om = curvature_forms(d.frame, d.curv);
    const Tensor4 os = curvature_forms_structure(d.frame, cf);
    return std::max(tnres(om, os), first_structure_residual(d.frame, d.geo, cf).max_abs());
  });
}

Outcome eh_anti_self_dual(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const EhData d = eh_data(p, a);
    const Tensor4 om = curvature_forms(d.frame, d.curv);
    // Hodge star of the coordinate orientation dy1..dy4.
    const AsdSplit s = asd_split(om, 4, frame_orientation(d.frame));
    return s.w_plus.norm() / s.w_minus.norm();
  });
}

Outcome eh_ricci_flat(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [a](const Point& p) {
    const EhData d = eh_data(p, a);
    return std::max(d.curv.ricci.cwiseAbs().maxCoeff(),
                    (d.curv.riemann_low - d.curv.weyl).max_abs()) /
           (1.0 + d.curv.riemann_low.max_abs());
  });
}

Outcome twistor_ba(const Ctx& cx) {
  const double a = cx.a(), eps = cx.cfg.perturb;
  const auto pairs = cx.pairs();
  return cx.map(cx.pts(SampleRegion::B_a, cx.cfg.samples), [=](const Point& p) {
    double r = 0.0;
    for (const auto& [b, c] : pairs) r = std::max(r, twistor_at(p, a, b, c, FrameId::e, eps));
    return r;
  });
}

Outcome twistor_cone(const Ctx& cx) {
  const double a = cx.a(), eps = cx.cfg.perturb;
  const auto pairs = cx.pairs();
  return cx.map(cx.pts(SampleRegion::L_interior, cx.scaled(100)), [=](const Point& p) {
    double r = 0.0;
    for (const auto& [b, c] : pairs) r = std::max(r, twistor_at(p, a, b, c, FrameId::e, eps));
    return r;
  });
}

Outcome twistor_axis(const Ctx& cx) {
  const double a = cx.a();
  const auto pairs = cx.pairs();
  std::vector<Point> pts;
  std::mt19937_64 rng(cx.seed);
  std::uniform_real_distribution<double> ud(0.05, 0.9);
  for (int i = 0; i < cx.scaled(30); ++i) pts.push_back({(i % 2 ? 1 : -1) * ud(rng) / a, 0, 0, 0, 0});
  return cx.map(pts, [=](const Point& p) {
    double r = 0.0;
    for (const auto& [b, c] : pairs) r = std::max(r, twistor_at(p, a, b, c, FrameId::u, 0.0));
    return r;
  });
}

Outcome twistor_htilde(const Ctx& cx) {
  const double a = cx.a();
  const auto pairs = cx.pairs();
  return cx.map(cx.pts(SampleRegion::Ca, cx.scaled(100)), [=](const Point& p) {
    double r = 0.0;
    for (const auto& [b, c] : pairs) r = std::max(r, twistor_at(p, a, b, c, FrameId::htilde, 0.0));
    return r;
  });
}

Outcome nu_parallel(const Ctx& cx) {
  const double a = cx.a();
  const auto pairs = cx.pairs();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [=](const Point& p) {
    const SpinGeometry sg = spin_geometry(FrameId::f, {Family::GaTilde, a}, p);
    double r = 0.0;
    for (const auto& [b, c] : pairs) {
      const SpinorJet nu = spinor_components(nu_bc(b, c), seed(p), a);
      for (int k = 0; k < 5; ++k)
        r = std::max(r, spinor_cov_deriv(nu, k, sg).norm() / (1.0 + std::abs(b) + std::abs(c)));
    }
    return r;
  });
}

Outcome conformal_nu(const Ctx& cx) {
  const double a = cx.a();
  const auto pairs = cx.pairs();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [=](const Point& p) {
    double r = 0.0;
    for (const auto& [b, c] : pairs) {
      const SpinorValue pe{values(spinor_components(psi_bc(b, c), seed(p, 0), a)), FrameId::e};
      const SpinorValue pt = conformal_rescale_spinor(pe, -std::log(cone_gap(p)), FrameId::etilde,
                                                      {Family::Ga, a}, {Family::GaTilde, a}, p);
      const SpinorValue pf = change_spinor_frame(pt, FrameId::f, p, a);
      const Vec4c want(0.0, 0.0, b, c);
      r = std::max(r, (pf.w - want).norm() / (1.0 + pf.w.norm() + want.norm()));
    }
    return r;
  });
}

Outcome psi_w0_flat(const Ctx& cx) {
  std::mt19937_64 rng(cx.seed);
  std::normal_distribution<double> nd;
  Vec4c w0;
  for (int i = 0; i < 4; ++i) w0(i) = cplx(nd(rng), nd(rng));
  return cx.map(cx.pts(SampleRegion::Closure, cx.scaled(100)), [w0](const Point& p) {
    const SpinGeometry sg = spin_geometry(FrameId::u, {Family::Minkowski, 1.0}, p);
    return twistor_residual(spinor_components(psi_w0(w0), seed(p), 1.0), sg).normalized();
  });
}

// Linear extrapolation to h = 0 from h and h/2 on each branch.
Vec4c branch_limit(const std::function<Vec4c(const Point&)>& phi, const CrossingCurve& cc,
                   bool plus, double h) {
  const Vec4c v1 = phi(plus ? cc.plus(h) : cc.minus(h));
  const Vec4c v2 = phi(plus ? cc.plus(h / 2) : cc.minus(h / 2));
  return 2.0 * v2 - v1;
}

Outcome spinor_extension(const Ctx& cx) {
  const double a = cx.a();
  std::mt19937_64 rng(cx.seed);
  std::vector<CrossingCurve> curves = cone_curves(rng, 8, a);
  while (curves.size() < 10) {
    const Eigen::VectorXd d = random_unit(rng, 4);
    const Point db{0.2, d(0), d(1), d(2), d(3)};
    const Point dl{1.0, 0.3 * d(1), 0.3 * d(0), -0.3 * d(3), 0.3 * d(2)};
    curves.push_back(origin_curve(db, dl, 0.05 / a));
  }
  const cplx b = cx.cfg.b, c = cx.cfg.c;
  Outcome o;
  std::string err;
  o.residuals = parallel_map(static_cast<int>(curves.size()), cx.threads, [&](int i) {
    auto phi = [&](const Point& p) {
      return values(spinor_components(psi_bc(b, c, FrameId::htilde), seed(p, 0), a));
    };
    const double h = 1e-5 / a;
    const Vec4c lp = branch_limit(phi, curves[i], true, h);
    const Vec4c lm = branch_limit(phi, curves[i], false, h);
    return (lp - lm).norm() / (1.0 + lp.norm() + lm.norm());
  }, &err);
  if (!err.empty()) o.note = "error: " + err;
  return o;
}

Outcome spinor_zero_structure(const Ctx& cx) {
  const double a = cx.a();
  std::mt19937_64 rng(cx.seed);
  std::vector<Point> pts;
  for (double rad : {1e-3, 1e-2, 1e-1}) {
    int n = 0;
    while (n < cx.scaled(30)) {
      const Point p = to_point(rad * random_unit(rng, 5));
      const double r = radius(p);
      if (r < 1e-2 * rad || std::abs(r - std::abs(p[0])) < 1e-2 * rad) continue;
      pts.push_back(p);
      ++n;
    }
  }
  const double c0 = 0.1;
  Outcome o = cx.map(pts, [=](const Point& p) {
    const Vec4c w = values(spinor_components(psi_bc(1.0, 0.0, FrameId::htilde), seed(p, 0), a));
    double n = 0.0;
    for (double v : p) n += v * v;
    return c0 / (w.norm() / std::sqrt(n));
  });
  o.note = "residual c0 / (|components| / |p|), c0 = 0.1";
  return o;
}

Outcome ckv_lie_derivative(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [a](const Point& p) {
    const JetMatrix g = metric_components({Family::Ga, a}, p);
    const Eigen::MatrixXd lv = lie_derivative_metric(field_V(seed(p)), g);
    return nres(lv, -4.0 * p[0] * g.values());
  });
}

Outcome ckv_divergence(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [a](const Point& p) {
    const LocalGeometry geo = local_geometry({Family::Ga, a}, p);
    return nres(divergence(field_V(seed(p)), geo), -10.0 * p[0]);
  });
}

Outcome ckv_spinor_square(const Ctx& cx) {
  const double a = cx.a();
  const cplx b = cx.cfg.b, c = cx.cfg.c;
  return cx.map(cx.pts(SampleRegion::Closure, cx.scaled(100)), [=](const Point& p) {
    const JetPoint x = seed(p);
    const LocalGeometry geo = local_geometry(metric_components({Family::Ga, a}, x));
    const FrameVecs e = frame_eval(FrameId::e, x, a).vec;
    const VecJ v = spinor_square_jet(spinor_components(psi_bc(b, c), x, a), e);
    const Eigen::MatrixXd lv = lie_derivative_metric(v, geo.g);
    return nres(lv, 0.4 * divergence(v, geo) * geo.g.values());
  });
}

Outcome square_psi_bc(const Ctx& cx) {
  const double a = cx.a();
  const auto pairs = cx.pairs();
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [=](const Point& p) {
    const JetPoint x = seed(p, 0);
    const FrameVecs e = frame_eval(FrameId::e, x, a).vec;
    const Eigen::VectorXd vf = vec_values(field_V(x));
    double r = 0.0;
    for (const auto& [b, c] : pairs) {
      const Eigen::VectorXd v = spinor_square(values(spinor_components(psi_bc(b, c), x, a)), e);
      r = std::max(r, nres(v, sq(b, c) * vf));
    }
    return r;
  });
}

Outcome square_norm_vv(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [a](const Point& p) {
    const JetPoint x = seed(p, 0);
    const Eigen::VectorXd v = vec_values(field_V(x));
    const double gvv = v.dot(metric_components({Family::Ga, a}, x).values() * v);
    const double d = cone_gap(p);
    return nres(gvv, -d * d);
  });
}

Outcome square_causal_type(const Ctx& cx) {
  const double a = cx.a();
  const cplx b = cx.cfg.b, c = cx.cfg.c;
  std::vector<Point> pts = cx.pts(SampleRegion::Closure, cx.cfg.samples);
  std::mt19937_64 rng(cx.seed);
  for (const Point& q : cone_points(rng, cx.scaled(30), a)) pts.push_back(q);
  return cx.map(pts, [=](const Point& p) {
    const JetPoint x = seed(p, 0);
    const Region reg = classify(p, a);
    // Constructed cone points carry rounding in r, so L_o is matched with a
    // relative tolerance.
    const double scale = std::sqrt(p[0] * p[0] + radius(p) * radius(p));
    const bool on_lo = std::abs(radius(p) - std::abs(p[0])) <= 1e-12 * scale;
    int want;  // 0 zero, 1 lightlike, 2 timelike
    if (scale == 0.0)
      want = 0;
    else if (on_lo)
      want = 1;
    else
      want = 2;
    // The u lift covers L_o and the axis, where g_a is Minkowski.
    const bool on_l = on_lo || reg.tag == RegionTag::L_boundary || reg.tag == RegionTag::L_interior;
    const FrameId fid = on_l ? FrameId::u : FrameId::e;
    const FrameVecs fr = frame_eval(fid, x, a).vec;
    const Eigen::VectorXd v = spinor_square(values(spinor_components(psi_bc(b, c, fid), x, a)), fr);
    const Eigen::MatrixXd g = metric_components({on_l ? Family::Minkowski : Family::Ga, a}, x).values();
    const double vn = v.norm();
    int got;
    if (vn <= 1e-12)
      got = 0;
    else if (std::abs(v.dot(g * v)) <= 1e-9 * vn * vn)
      got = 1;
    else
      got = v.dot(g * v) < 0 ? 2 : 3;
    return got == want ? 0.0 : 1.0;
  });
}

Outcome length_u_bc(const Ctx& cx) {
  const double a = cx.a();
  const auto pairs = cx.pairs();
  std::vector<Point> pts = cx.pts(SampleRegion::Closure, cx.cfg.samples);
  std::mt19937_64 rng(cx.seed);
  for (const Point& q : cone_points(rng, cx.scaled(30), a)) pts.push_back(q);
  return cx.map(pts, [=](const Point& p) {
    double r = 0.0;
    for (const auto& [b, c] : pairs) r = std::max(r, nres(length_square_u(b, c, p), cone_gap(p) * sq(b, c)));
    return r;
  });
}

Outcome einstein_rescaling(const Ctx& cx) {
  const double a = cx.a();
  const cplx b = cx.cfg.b, c = cx.cfg.c;
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [=](const Point& p) {
    return einstein_rescale_residual(b, c, p, a).cwiseAbs().maxCoeff();
  });
}

Outcome regularity_ga(const Ctx& cx) {
  const double a = cx.a();
  std::mt19937_64 rng(cx.seed);
  const std::vector<CrossingCurve> curves = cone_curves(rng, std::max(10, cx.scaled(12)), a);
  Outcome o;
  std::string err;
  const ProbeField field = ga_field(a);
  o.residuals = parallel_map(static_cast<int>(curves.size()), cx.threads, [&](int i) {
    return std::abs(smoothness_probe(field, curves[i]).smoothness_class() - 1.0);
  }, &err);
  if (!err.empty()) o.note = "error: " + err;
  return o;
}

Outcome regularity_ro2(const Ctx& cx) {
  const double a = cx.a();
  std::mt19937_64 rng(cx.seed);
  const std::vector<CrossingCurve> curves = cone_curves(rng, 5, a);
  Outcome o;
  std::string err;
  o.residuals = parallel_map(static_cast<int>(curves.size()), cx.threads, [&](int i) {
    return std::abs(smoothness_probe(ro2_field(), curves[i]).smoothness_class() - 1.0);
  }, &err);
  if (!err.empty()) o.note = "error: " + err;
  return o;
}

Outcome regularity_monomials(const Ctx& cx) {
  std::mt19937_64 rng(cx.seed);
  std::vector<MonomialSpec> specs;
  for (int t = 0; t < 30; ++t) {
    MonomialSpec s;
    s.m = 1 + static_cast<int>(rng() % 3);
    const int target = static_cast<int>(rng() % 4) - 1;
    s.l = {0, 0, 0, 0, 0, 0};
    s.l[0] = static_cast<int>(rng() % 2);
    int rest = target + s.l[0];
    if (rest < 0) {
      s.l[0] -= rest;
      rest = 0;
    }
    for (int i = 0; i < rest; ++i) s.l[1 + rng() % 5]++;
    specs.push_back(s);
  }
  const CrossingCurve cc =
      crossing_curve({0.4, 0.2, 0.2, 0.2, 0.2}, {0.3, 0.9, -0.2, 0.1, 0.4});
  const CrossingCurve oc = origin_curve({0.2, 0.5, -0.4, 0.6, 0.3}, {0.9, 0.2, 0.3, -0.1, 0.25});
  Outcome o;
  std::string err;
  o.residuals = parallel_map(30, cx.threads, [&](int i) {
    const ProbeField f = monomial_field(specs[i]);
    const int got = std::min(smoothness_probe(f, cc).smoothness_class(),
                             smoothness_probe(f, oc).smoothness_class());
    return got == std::min(specs[i].k() - 1, 3) ? 0.0 : 1.0;
  }, &err);
  if (!err.empty()) o.note = "error: " + err;
  return o;
}

Outcome regularity_bounded(const Ctx& cx) {
  const double a = cx.a();
  struct Case {
    MonomialSpec spec;
    double t;
  };
  std::vector<Case> cases;
  auto add_case = [&](std::array<int, 6> l, double t) {
    MonomialSpec s;
    s.l = l;
    cases.push_back({s, t / a});
  };
  add_case({1, 1, 0, 0, 0, 0}, 1.0);  // x0 / r
  add_case({0, 0, 0, 0, 0, 0}, 1.0);
  add_case({0, 0, 1, 1, 0, 0}, 0.5);
  add_case({1, 1, 1, 0, 0, 1}, 0.5);
  add_case({2, 2, 0, 1, 1, 0}, 0.3);
  Outcome o;
  std::string err;
  o.residuals = parallel_map(static_cast<int>(cases.size()), cx.threads, [&](int i) {
    const Case& cs = cases[i];
    const double sup = boundedness_probe(cs.spec, cs.t, a, cx.scaled(300), cx.seed + i);
    return std::max(0.0, sup / std::pow(cs.t, cs.spec.s_l()) - 1.0);
  }, &err);
  if (!err.empty()) o.note = "error: " + err;
  return o;
}

Outcome weyl_decay_exponent(const Ctx& cx) {
  const double a = cx.a();
  std::mt19937_64 rng(cx.seed);
  std::uniform_real_distribution<double> ud(0.3, 0.6);
  std::vector<Point> bases;
  for (int i = 0; i < 5; ++i) bases.push_back(on_cone(ud(rng) / a, i % 2 ? 1.0 : -1.0, random_unit(rng, 4)));
  Outcome o = cx.map(bases, [a](const Point& base) {
    return std::abs(weyl_decay(base, a, 10, 2, 0.05 / a).exponent - 2.0);
  });
  if (o.note.empty()) o.note = "residual |exponent - 2|";
  return o;
}

Outcome weyl_rescaling(const Ctx& cx, int power) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100)), [=](const Point& p) {
    const WeylPair w = weyl_pair(p, a);
    return tnres(w.ga, std::pow(w.d, power) * w.gatilde);
  });
}

Outcome weyl_nonflat(const Ctx& cx) {
  const double a = cx.a();
  Exclusions ex = cx.ex();
  ex.cone = std::max(ex.cone, 0.1 / a);
  ex.axis = std::max(ex.axis, 0.1 / a);
  Outcome o = cx.map(cx.pts(SampleRegion::B_a, cx.scaled(100), ex), [a](const Point& p) {
    return 1e-3 / curvature({Family::Ga, a}, p).weyl.max_abs();
  });
  o.note = "residual 1e-3 / max|W| at B_a samples 0.1/a away from L_o and the axis";
  return o;
}

Outcome weyl_zero_in_cone(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::L_interior, cx.scaled(100)), [a](const Point& p) {
    return curvature({Family::Ga, a}, p).weyl.max_abs();
  });
}

Outcome ricci_conformal_identity(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [a](const Point& p) {
    const double ric = curvature({Family::Ga, a}, p).ricci.norm();
    return conformal_ricci_check(p, a).norm() / (1.0 + ric);
  });
}

Outcome ricci_conformal_flat(const Ctx& cx) {
  return cx.map(cx.pts(SampleRegion::Closure, cx.scaled(100)), [](const Point& p) {
    return conformal_ricci_check_flat(p).norm();
  });
}

// V_{D psi} = -(n/2) grad div V_psi: the sign is the one the flat oracle
// produces for psi_w0 on Minkowski space.
Outcome essentiality_limit(const Ctx& cx) {
  const double a = cx.a();
  const cplx b = cx.cfg.b, c = cx.cfg.c;
  std::mt19937_64 rng(cx.seed);
  std::vector<Point> pts;
  Eigen::VectorXd dir;
  do {
    dir = random_unit(rng, 5);
    dir(0) *= 0.3;  // keep the ray outside the cone
    dir /= dir.norm();
  } while (classify(to_point(dir), a).tag != RegionTag::B_a ||
           std::abs(radius(to_point(dir)) - std::abs(dir(0))) < 0.2);
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) pts.push_back(to_point(eps / a * dir));
  Outcome o;
  std::string err;
  std::vector<Eigen::VectorXd> lhs(pts.size()), rhs(pts.size());
  o.residuals = parallel_map(static_cast<int>(pts.size()), cx.threads, [&](int i) {
    const EssentialityProbe e = essentiality_probe(b, c, a, pts[i]);
    lhs[i] = e.v_dpsi;
    rhs[i] = e.rhs;
    return nres(e.v_dpsi, -e.rhs);
  }, &err);
  if (!err.empty()) {
    o.note = "error: " + err;
    return o;
  }
  // Converges: the gaps shrink over the radii until they reach rounding level.
  const std::vector<double> gaps = o.residuals;
  for (size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] > gaps[i - 1] && gaps[i] > 1e-13) o.forced_fail = true;
  const double limit = lhs.back().norm();
  const double want = 25.0 * sq(b, c);
  std::ostringstream note;
  note << "gaps";
  for (double g : gaps) note << ' ' << format_double(g);
  note << "; limit |V_Dpsi| = " << format_double(limit) << ", expected " << format_double(want);
  o.note = note.str();
  o.residuals = {gaps.back(), nres(limit, want)};
  if (!(limit > 0.0)) o.forced_fail = true;
  return o;
}

Outcome essentiality_flat_oracle(const Ctx& cx) {
  std::mt19937_64 rng(cx.seed);
  std::normal_distribution<double> nd;
  Vec4c w0;
  for (int i = 0; i < 4; ++i) w0(i) = cplx(nd(rng), nd(rng));
  return cx.map(cx.pts(SampleRegion::Closure, cx.scaled(50)), [w0](const Point& p) {
    const EssentialityProbe e = essentiality_flat(w0, p);
    return nres(e.v_dpsi, -e.rhs);
  });
}

Outcome signature_ga(const Ctx& cx) {
  const double a = cx.a();
  return cx.map(cx.pts(SampleRegion::Closure, cx.cfg.samples), [a](const Point& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric_components({Family::Ga, a}, p).values());
    const auto ev = es.eigenvalues();
    const int neg = static_cast<int>((ev.array() < 0).count());
    return neg == 1 && ev.cwiseAbs().minCoeff() > 1e-12 ? 0.0 : 1.0;
  });
}

struct CheckDef {
  CheckInfo info;
  std::function<Outcome(const Ctx&)> run;
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {{"clifford.relations", "clifford-relations", 0.5}, clifford_relations},
      {{"frame.e_orthonormal", "frame-e", 1e-10}, frame_e_orthonormal},
      {{"frame.htilde_orthonormal", "frame-htilde", 1e-9}, frame_htilde_orthonormal},
      {{"frame.etilde_orthonormal", "frame-etilde", 1e-9}, frame_etilde_orthonormal},
      {{"frame.etilde_f_kappa", "frame-etilde", 1e-10}, frame_etilde_f_kappa},
      {{"lift.spin_lifts", "spin-lifts", 1e-9}, spin_lifts},
      {{"boost.kappa_exp", "boost", 1e-10}, boost_kappa_exp},
      {{"boost.k2_minus_q2", "boost", 1e-10}, boost_k2_q2},
      {{"signature.ga", "lorentzian-metric", 0.5}, signature_ga},
      {{"product.gatilde_eh", "conformal-product", 1e-10}, product_gatilde_eh},
      {{"product.flat_in_cone", "conformal-product", 1e-10}, product_flat_in_cone},
      {{"product.s_direction", "conformal-product", 1e-9}, product_s_direction},
      {{"ricci.gatilde_flat", "conformal-product", 1e-8}, ricci_gatilde_flat},
      {{"eh.connection_forms", "eh-connection", 1e-9}, eh_connection_forms},
      {{"eh.curvature_forms", "eh-curvature", 1e-8}, eh_curvature_forms},
      {{"eh.structure_equations", "eh-curvature", 1e-8}, eh_structure_equations},
      {{"eh.anti_self_dual", "eh-anti-self-dual", 1e-9}, eh_anti_self_dual},
      {{"eh.ricci_flat", "eh-anti-self-dual", 1e-9}, eh_ricci_flat},
      {{"twistor.psi_bc_ba", "twistor-equation", 1e-8}, twistor_ba},
      {{"twistor.psi_bc_cone", "twistor-equation", 1e-8}, twistor_cone},
      {{"twistor.psi_bc_axis", "twistor-equation", 1e-8}, twistor_axis},
      {{"twistor.psi_bc_htilde", "twistor-equation", 1e-8}, twistor_htilde},
      {{"twistor.nu_parallel", "parallel-spinor", 1e-9}, nu_parallel},
      {{"twistor.conformal_nu", "parallel-spinor", 1e-10}, conformal_nu},
      {{"twistor.psi_w0_flat", "twistor-equation", 1e-10}, psi_w0_flat},
      {{"spinor.extension", "spinor-extension", 1e-8}, spinor_extension},
      {{"spinor.zero_structure", "spinor-zero", 1.0}, spinor_zero_structure},
      {{"ckv.lie_derivative", "conformal-killing", 1e-9}, ckv_lie_derivative},
      {{"ckv.divergence", "conformal-killing", 1e-9}, ckv_divergence},
      {{"ckv.spinor_square", "conformal-killing", 1e-9}, ckv_spinor_square},
      {{"square.psi_bc", "spinor-square", 1e-9}, square_psi_bc},
      {{"square.norm_vv", "spinor-square", 1e-10}, square_norm_vv},
      {{"square.causal_type", "spinor-square", 0.5}, square_causal_type},
      {{"length.u_bc", "length-square", 1e-12}, length_u_bc},
      {{"einstein.rescaling", "einstein-rescaling", 1e-7}, einstein_rescaling},
      {{"regularity.ga_c1_not_c2", "metric-regularity", 0.5}, regularity_ga},
      {{"regularity.monomials", "monomial-regularity", 0.5}, regularity_monomials},
      {{"regularity.ro2", "monomial-regularity", 0.5}, regularity_ro2},
      {{"regularity.bounded", "monomial-bounds", 1e-9}, regularity_bounded},
      {{"weyl.decay_exponent", "weyl-extension", 0.15}, weyl_decay_exponent},
      {{"weyl.rescaling", "weyl-extension", 1e-8}, [](const Ctx& c) { return weyl_rescaling(c, 4); }},
      {{"weyl.rescaling_d2", "weyl-extension", 1e-8}, [](const Ctx& c) { return weyl_rescaling(c, 2); }},
      {{"weyl.nonflat_ba", "weyl-extension", 1.0}, weyl_nonflat},
      {{"weyl.zero_in_cone", "weyl-extension", 1e-12}, weyl_zero_in_cone},
      {{"ricci.conformal_identity", "conformal-ricci", 1e-8}, ricci_conformal_identity},
      {{"ricci.conformal_identity_flat", "conformal-ricci", 1e-8}, ricci_conformal_flat},
      {{"essentiality.limit", "essentiality", 1e-6}, essentiality_limit},
      {{"essentiality.flat_oracle", "essentiality", 1e-9}, essentiality_flat_oracle},
  };
  return defs;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string cplx_str(cplx z) {
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

}  // namespace

void SuiteConfig::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("a must be positive");
  if (samples < 1) throw ConfigError("samples must be at least 1");
  if (!(exclude > 0.0) || !(exclude < 1.0 / (10.0 * a)))
    throw ConfigError("exclusion must lie in (0, 1/(10a))");
  for (const auto& [name, tol] : tol_override) {
    if (!(tol > 0.0)) throw ConfigError("tolerance for '" + name + "' must be positive");
    const auto& defs = registry();
    if (std::none_of(defs.begin(), defs.end(), [&](const CheckDef& d) { return d.info.name == name; }))
      throw ConfigError("unknown check '" + name + "' in tolerance override");
  }
  for (const auto& name : only) {
    const auto& defs = registry();
    if (std::none_of(defs.begin(), defs.end(), [&](const CheckDef& d) { return d.info.name == name; }))
      throw ConfigError("unknown check '" + name + "'");
  }
  if (threads < 0) throw ConfigError("threads must be non-negative");
  parse_format(format);
}

const std::vector<CheckInfo>& list_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& d : registry()) v.push_back(d.info);
    return v;
  }();
  return infos;
}

int effective_threads(const SuiteConfig& cfg) {
  int t = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (const char* env = std::getenv("VERIFY_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) t = std::min(t, cap);
  }
  return t;
}

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Report rep;
  const int threads = effective_threads(cfg);
  for (const auto& def : registry()) {
    if (!cfg.only.empty() &&
        std::find(cfg.only.begin(), cfg.only.end(), def.info.name) == cfg.only.end())
      continue;
    const Ctx cx{cfg, threads, fnv1a(def.info.name) ^ cfg.seed};
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = def.run(cx);
    } catch (const std::exception& e) {
      out.residuals = {kInf};
      out.note = std::string("error: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();

    CheckRecord rec;
    rec.name = def.info.name;
    rec.claim = def.info.claim;
    const auto it = cfg.tol_override.find(def.info.name);
    rec.tol = it != cfg.tol_override.end() ? it->second : def.info.tol;
    rec.samples = static_cast<int>(out.residuals.size());
    double mx = 0.0;
    bool finite = true;
    for (double r : out.residuals) {
      if (!std::isfinite(r)) finite = false;
      mx = std::max(mx, r);
    }
    rec.residual_max = finite ? mx : kInf;
    rec.residual_median = median(out.residuals);
    rec.pass = finite && !out.forced_fail && !out.residuals.empty() && rec.residual_max < rec.tol;
    rec.note = out.note;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.checks.push_back(rec);
  }
  rep.meta["a"] = format_double(cfg.a);
  rep.meta["b"] = cplx_str(cfg.b);
  rep.meta["c"] = cplx_str(cfg.c);
  rep.meta["exclude"] = format_double(cfg.exclude);
  rep.meta["perturb"] = format_double(cfg.perturb);
  rep.meta["samples"] = std::to_string(cfg.samples);
  rep.meta["seed"] = std::to_string(cfg.seed);
  rep.meta["version"] = kVersion;
  rep.meta["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION);
  return rep;
}

namespace {

cplx json_complex(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("spinor parameter must be a number or [re, im]");
}

}  // namespace

void apply_config_json(SuiteConfig& cfg, const std::string& json_text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "a") cfg.a = v.get<double>();
      else if (key == "samples") cfg.samples = v.get<int>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "b") cfg.b = json_complex(v);
      else if (key == "c") cfg.c = json_complex(v);
      else if (key == "exclude") cfg.exclude = v.get<double>();
      else if (key == "report") cfg.report_path = v.get<std::string>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "perturb") cfg.perturb = v.get<double>();
      else if (key == "threads") cfg.threads = v.get<int>();
      else if (key == "timings") cfg.timings = v.get<bool>();
      else if (key == "only") cfg.only = v.get<std::vector<std::string>>();
      else if (key == "tol_override")
        for (const auto& [name, tol] : v.items()) cfg.tol_override[name] = tol.get<double>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  SuiteConfig cfg;
  apply_config_json(cfg, ss.str());
  return cfg;
}

}  // namespace twz
