#include "twz/clifford.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "twz/errors.hpp"

namespace twz {

namespace {

// Gaussian integers, enough to check the relations without rounding.
struct GInt {
  long re = 0;
  long im = 0;
};

GInt operator*(GInt a, GInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
GInt operator+(GInt a, GInt b) { return {a.re + b.re, a.im + b.im}; }

using GMat = std::array<std::array<GInt, 4>, 4>;

// Entries as (re, im) pairs, row-major.
constexpr int kGammaTable[5][4][4][2] = {
    {{{-1, 0}, {0, 0}, {0, 0}, {0, 0}},
     {{0, 0}, {-1, 0}, {0, 0}, {0, 0}},
     {{0, 0}, {0, 0}, {1, 0}, {0, 0}},
     {{0, 0}, {0, 0}, {0, 0}, {1, 0}}},
    {{{0, 0}, {0, 0}, {-1, 0}, {0, 0}},
     {{0, 0}, {0, 0}, {0, 0}, {1, 0}},
     {{1, 0}, {0, 0}, {0, 0}, {0, 0}},
     {{0, 0}, {-1, 0}, {0, 0}, {0, 0}}},
    {{{0, 0}, {0, 0}, {0, -1}, {0, 0}},
     {{0, 0}, {0, 0}, {0, 0}, {0, -1}},
     {{0, -1}, {0, 0}, {0, 0}, {0, 0}},
     {{0, 0}, {0, -1}, {0, 0}, {0, 0}}},
    {{{0, 0}, {0, 0}, {0, 0}, {-1, 0}},
     {{0, 0}, {0, 0}, {-1, 0}, {0, 0}},
     {{0, 0}, {1, 0}, {0, 0}, {0, 0}},
     {{1, 0}, {0, 0}, {0, 0}, {0, 0}}},
    {{{0, 0}, {0, 0}, {0, 0}, {0, -1}},
     {{0, 0}, {0, 0}, {0, 1}, {0, 0}},
     {{0, 0}, {0, 1}, {0, 0}, {0, 0}},
     {{0, -1}, {0, 0}, {0, 0}, {0, 0}}},
};

GMat gamma_int(int k) {
  GMat m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = {kGammaTable[k][i][j][0], kGammaTable[k][i][j][1]};
  return m;
}

GMat mul(const GMat& a, const GMat& b) {
  GMat c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] = c[i][j] + a[i][k] * b[k][j];
  return c;
}

}  // namespace

std::string to_string(FrameId id) {
  switch (id) {
    case FrameId::e: return "e";
    case FrameId::f: return "f";
    case FrameId::etilde: return "etilde";
    case FrameId::u: return "u";
    case FrameId::htilde: return "htilde";
    case FrameId::custom: return "custom";
  }
  return "unknown";
}

const std::array<Mat4c, 5>& gammas() {
  static const std::array<Mat4c, 5> g = [] {
    std::array<Mat4c, 5> out;
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          out[k](i, j) = cplx(kGammaTable[k][i][j][0], kGammaTable[k][i][j][1]);
    return out;
  }();
  return g;
}

std::vector<GammaIdentity> gamma_relations() {
  std::vector<GammaIdentity> out;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const GMat gi = gamma_int(i), gj = gamma_int(j);
      const GMat ab = mul(gi, gj), ba = mul(gj, gi);
      // gamma_i gamma_j + gamma_j gamma_i = -2 eta_ij Id with eta = diag(-1, 1, 1, 1, 1).
      const long expect = i != j ? 0 : (i == 0 ? 2 : -2);
      bool ok = true;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          const GInt s = ab[r][c] + ba[r][c];
          const long want = r == c ? expect : 0;
          ok = ok && s.re == want && s.im == 0;
        }
      out.push_back({i, j, ok});
    }
  return out;
}

Mat4c clifford_matrix(const std::array<double, 5>& v) {
  Mat4c m = Mat4c::Zero();
  for (int i = 0; i < 5; ++i) m += v[i] * gammas()[i];
  return m;
}

SpinorValue clifford_mul(const std::array<double, 5>& v, FrameId v_frame, const SpinorValue& w) {
  if (v_frame != w.frame)
    throw FrameMismatchError("vector in frame " + to_string(v_frame) + ", spinor in frame " +
                             to_string(w.frame));
  return {clifford_matrix(v) * w.w, w.frame};
}

cplx spinor_inner(const Vec4c& phi, const Vec4c& psi) {
  return (gammas()[0] * phi).dot(psi);  // dot conjugates its first argument
}

cplx spinor_inner(const SpinorValue& phi, const SpinorValue& psi) {
  if (phi.frame != psi.frame) throw FrameMismatchError("spinors refer to different frames");
  return spinor_inner(phi.w, psi.w);
}

Mat4c spin_exp(double t, int i, int j) {
  const Mat4c b = gammas()[i] * gammas()[j];
  // (gamma_i gamma_j)^2 = -gamma_i^2 gamma_j^2 = +1 for a timelike pair, -1 otherwise.
  const bool hyperbolic = (i == 0) != (j == 0);
  const double h = 0.5 * t;
  if (hyperbolic) return std::cosh(h) * Mat4c::Identity() + std::sinh(h) * b;
  return std::cos(h) * Mat4c::Identity() + std::sin(h) * b;
}

Mat5 lambda_check(const Mat4c& s) {
  const auto& g = gammas();
  const Mat4c s_inv = s.inverse();
  Mat5 m;
  for (int j = 0; j < 5; ++j) {
    const Mat4c c = s * g[j] * s_inv;
    Mat4c rebuilt = Mat4c::Zero();
    for (int i = 0; i < 5; ++i) {
      // tr(gamma_i gamma_l) = -4 eta_il.
      const cplx coeff = (g[i] * c).trace() * (i == 0 ? 0.25 : -0.25);
      if (std::abs(coeff.imag()) > 1e-10)
        throw NotInSpinGroupError("conjugated gamma has a complex coefficient");
      m(i, j) = coeff.real();
      rebuilt += coeff.real() * g[i];
    }
    if ((rebuilt - c).norm() > 1e-10 * (1.0 + c.norm()))
      throw NotInSpinGroupError("conjugated gamma leaves the span of the gammas");
  }
  return m;
}

Mat5 matrix_exp(const Mat5& m) { return m.exp(); }

}  // namespace twz
