#pragma once

// Truncated Taylor jets over R^5.
//
// A Jet<T> carries the value of a scalar field at a point together with all
// of its partial derivatives through order 3. Partials are stored as plain
// partial derivatives (d^2 f / dx_i dx_j, not divided by any factorial), in
// symmetric packed form, so hess and third are symmetric by construction.
//
// Each jet also records how many orders are trustworthy. Differentiating a
// jet with diff() shifts every slot down by one order and lowers the valid
// order accordingly; arithmetic propagates the minimum. Reading a partial
// above the valid order throws OrderError.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>

#include "twz/errors.hpp"

namespace twz {

inline constexpr int kVars = 5;
inline constexpr int kMaxOrder = 3;
inline constexpr int kHessSize = 15;
inline constexpr int kThirdSize = 35;

namespace detail {

struct SymTables {
  std::array<std::array<int, kVars>, kVars> idx2{};
  std::array<std::array<std::array<int, kVars>, kVars>, kVars> idx3{};
  std::array<std::array<int, 2>, kHessSize> pairs{};
  std::array<std::array<int, 3>, kThirdSize> triples{};
};

constexpr SymTables make_tables() {
  SymTables t{};
  int n = 0;
  for (int i = 0; i < kVars; ++i)
    for (int j = i; j < kVars; ++j) {
      t.pairs[n] = {i, j};
      t.idx2[i][j] = t.idx2[j][i] = n;
      ++n;
    }
  n = 0;
  for (int i = 0; i < kVars; ++i)
    for (int j = i; j < kVars; ++j)
      for (int k = j; k < kVars; ++k) {
        t.triples[n] = {i, j, k};
        const int perms[6][3] = {{i, j, k}, {i, k, j}, {j, i, k},
                                 {j, k, i}, {k, i, j}, {k, j, i}};
        for (const auto& p : perms) t.idx3[p[0]][p[1]][p[2]] = n;
        ++n;
      }
  return t;
}

inline constexpr SymTables kTables = make_tables();

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
bool positive_real(const T& v) {
  if constexpr (is_complex<T>::value)
    return v.imag() == 0.0 && v.real() > 0.0;
  else
    return v > T(0);
}

}  // namespace detail

/// Number of derivative orders a jet carries reliably (0..3).
struct JetOrder {
  int order = kMaxOrder;
};

template <typename T>
class Jet {
 public:
  using scalar_type = T;

  Jet() = default;
  Jet(T value) : v_(value) {}  // NOLINT: constants convert implicitly

  template <typename U>
    requires(!std::is_same_v<U, T> && std::is_convertible_v<U, T>)
  explicit Jet(const Jet<U>& other) : order_(other.order()) {
    v_ = T(other.value());
    for (int i = 0; i < kVars; ++i) g_[i] = T(other.grad_slot(i));
    for (int n = 0; n < kHessSize; ++n) h_[n] = T(other.hess_slot(n));
    for (int n = 0; n < kThirdSize; ++n) t_[n] = T(other.third_slot(n));
  }

  /// Coordinate function x_var seeded at `value`.
  static Jet variable(T value, int var, int order = kMaxOrder) {
    Jet j(value);
    j.g_[var] = T(1);
    j.order_ = order;
    return j;
  }

  T value() const { return v_; }
  int order() const { return order_; }

  T d(int i) const {
    require(1);
    return g_[i];
  }
  T d(int i, int j) const {
    require(2);
    return h_[detail::kTables.idx2[i][j]];
  }
  T d(int i, int j, int k) const {
    require(3);
    return t_[detail::kTables.idx3[i][j][k]];
  }

  /// Partial derivative for a multi-index given as a list of variable indices.
  T partial(std::span<const int> multi) const {
    switch (multi.size()) {
      case 0: return v_;
      case 1: return d(multi[0]);
      case 2: return d(multi[0], multi[1]);
      case 3: return d(multi[0], multi[1], multi[2]);
      default: throw OrderError("multi-index order exceeds 3");
    }
  }
  T partial(std::initializer_list<int> multi) const {
    return partial(std::span<const int>(multi.begin(), multi.size()));
  }

  // Raw packed storage (no order check); used by conversions and tests.
  T grad_slot(int i) const { return g_[i]; }
  T hess_slot(int n) const { return h_[n]; }
  T third_slot(int n) const { return t_[n]; }
  T& grad_slot(int i) { return g_[i]; }
  T& hess_slot(int n) { return h_[n]; }
  T& third_slot(int n) { return t_[n]; }

  /// Drops everything above `order`.
  Jet& truncate(int order) {
    if (order < order_) order_ = order;
    clear_above(order_);
    return *this;
  }

  Jet operator-() const {
    Jet r = *this;
    r.v_ = -v_;
    for (auto& x : r.g_) x = -x;
    for (auto& x : r.h_) x = -x;
    for (auto& x : r.t_) x = -x;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    v_ += o.v_;
    if (order_ >= 1)
      for (int i = 0; i < kVars; ++i) g_[i] += o.g_[i];
    if (order_ >= 2)
      for (int n = 0; n < kHessSize; ++n) h_[n] += o.h_[n];
    if (order_ >= 3)
      for (int n = 0; n < kThirdSize; ++n) t_[n] += o.t_[n];
    clear_above(order_);
    return *this;
  }
  Jet& operator-=(const Jet& o) { return *this += -o; }

  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }
  Jet& operator*=(const T& s) {
    v_ *= s;
    for (auto& x : g_) x *= s;
    for (auto& x : h_) x *= s;
    for (auto& x : t_) x *= s;
    return *this;
  }
  Jet& operator+=(const T& s) {
    v_ += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) {
    a.order_ = std::min(a.order_, b.order_);
    a.v_ -= b.v_;
    for (int i = 0; i < kVars; ++i) a.g_[i] -= b.g_[i];
    for (int n = 0; n < kHessSize; ++n) a.h_[n] -= b.h_[n];
    for (int n = 0; n < kThirdSize; ++n) a.t_[n] -= b.t_[n];
    a.clear_above(a.order_);
    return a;
  }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a += -s; }
  friend Jet operator-(const T& s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, const T& s) {
    if (s == T(0)) throw DomainError("jet division by zero");
    return a *= T(1) / s;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    r.v_ = a.v_ * b.v_;
    if (r.order_ >= 1)
      for (int i = 0; i < kVars; ++i) r.g_[i] = a.g_[i] * b.v_ + a.v_ * b.g_[i];
    if (r.order_ >= 2)
      for (int n = 0; n < kHessSize; ++n) {
        const auto [i, j] = detail::kTables.pairs[n];
        r.h_[n] = a.h_[n] * b.v_ + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i] +
                  a.v_ * b.h_[n];
      }
    if (r.order_ >= 3) {
      const auto& I2 = detail::kTables.idx2;
      for (int n = 0; n < kThirdSize; ++n) {
        const auto [i, j, k] = detail::kTables.triples[n];
        r.t_[n] = a.t_[n] * b.v_ + a.h_[I2[i][j]] * b.g_[k] +
                  a.h_[I2[i][k]] * b.g_[j] + a.h_[I2[j][k]] * b.g_[i] +
                  a.g_[i] * b.h_[I2[j][k]] + a.g_[j] * b.h_[I2[i][k]] +
                  a.g_[k] * b.h_[I2[i][j]] + a.v_ * b.t_[n];
      }
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
  friend Jet operator/(const T& s, const Jet& b) { return inv(b) * s; }

  /// phi(f) given phi and its first three derivatives evaluated at f.value().
  Jet compose(T f0, T f1, T f2, T f3) const {
    Jet r;
    r.order_ = order_;
    r.v_ = f0;
    if (order_ >= 1)
      for (int i = 0; i < kVars; ++i) r.g_[i] = f1 * g_[i];
    if (order_ >= 2)
      for (int n = 0; n < kHessSize; ++n) {
        const auto [i, j] = detail::kTables.pairs[n];
        r.h_[n] = f2 * g_[i] * g_[j] + f1 * h_[n];
      }
    if (order_ >= 3) {
      const auto& I2 = detail::kTables.idx2;
      for (int n = 0; n < kThirdSize; ++n) {
        const auto [i, j, k] = detail::kTables.triples[n];
        r.t_[n] = f3 * g_[i] * g_[j] * g_[k] +
                  f2 * (h_[I2[i][j]] * g_[k] + h_[I2[i][k]] * g_[j] +
                        h_[I2[j][k]] * g_[i]) +
                  f1 * t_[n];
      }
    }
    return r;
  }

  friend Jet inv(const Jet& b) {
    if (b.v_ == T(0)) throw DomainError("jet division by zero");
    const T x = T(1) / b.v_;
    return b.compose(x, -x * x, T(2) * x * x * x, T(-6) * x * x * x * x);
  }

  /// Partial derivative along variable i as a jet one order lower.
  friend Jet diff(const Jet& f, int i) {
    if (f.order_ < 1) throw OrderError("cannot differentiate an order-0 jet");
    Jet r;
    r.order_ = f.order_ - 1;
    r.v_ = f.g_[i];
    const auto& I2 = detail::kTables.idx2;
    const auto& I3 = detail::kTables.idx3;
    for (int j = 0; j < kVars; ++j) r.g_[j] = f.h_[I2[i][j]];
    for (int n = 0; n < kHessSize; ++n) {
      const auto [j, k] = detail::kTables.pairs[n];
      r.h_[n] = f.t_[I3[i][j][k]];
    }
    r.clear_above(r.order_);
    return r;
  }

 private:
  void require(int k) const {
    if (k > order_) throw OrderError("jet carries derivatives only through order " +
                                     std::to_string(order_));
  }
  void clear_above(int order) {
    if (order < 1) g_.fill(T(0));
    if (order < 2) h_.fill(T(0));
    if (order < 3) t_.fill(T(0));
  }

  T v_{};
  std::array<T, kVars> g_{};
  std::array<T, kHessSize> h_{};
  std::array<T, kThirdSize> t_{};
  int order_ = kMaxOrder;
};

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

template <typename T>
Jet<T> sqrt(const Jet<T>& f) {
  if (!detail::positive_real(f.value()))
    throw DomainError("jet sqrt needs a positive argument");
  const T s = std::sqrt(f.value());
  const T x = T(1) / f.value();
  return f.compose(s, T(0.5) / s, T(-0.25) * s * x * x, T(0.375) * s * x * x * x);
}

template <typename T>
Jet<T> log(const Jet<T>& f) {
  if (!detail::positive_real(f.value()))
    throw DomainError("jet log needs a positive argument");
  const T x = T(1) / f.value();
  return f.compose(std::log(f.value()), x, -x * x, T(2) * x * x * x);
}

template <typename T>
Jet<T> exp(const Jet<T>& f) {
  const T e = std::exp(f.value());
  return f.compose(e, e, e, e);
}

/// |f| for a real jet with nonzero value.
inline RJet abs(const RJet& f) {
  if (f.value() == 0.0) throw DomainError("jet abs at a zero value");
  return f.value() > 0.0 ? f : -f;
}

template <typename T>
Jet<T> pow(const Jet<T>& f, int n) {
  if (n < 0) return inv(pow(f, -n));
  Jet<T> result(T(1));
  Jet<T> base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

template <typename T>
Jet<T> square(const Jet<T>& f) {
  return f * f;
}

/// Elementary operations usable through jet_apply.
enum class JetFn { add, sub, mul, div, sqrt, ln, pow_int };

template <typename T>
Jet<T> jet_apply(JetFn fn, std::span<const Jet<T>> args, int exponent = 0) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw DomainError("jet_apply: wrong number of arguments");
  };
  switch (fn) {
    case JetFn::add: need(2); return args[0] + args[1];
    case JetFn::sub: need(2); return args[0] - args[1];
    case JetFn::mul: need(2); return args[0] * args[1];
    case JetFn::div: need(2); return args[0] / args[1];
    case JetFn::sqrt: need(1); return sqrt(args[0]);
    case JetFn::ln: need(1); return log(args[0]);
    case JetFn::pow_int: need(1); return pow(args[0], exponent);
  }
  throw DomainError("jet_apply: unknown function");
}

/// Slotwise complex conjugate.
inline CJet conj(const CJet& f) {
  CJet r(std::conj(f.value()));
  r.truncate(f.order());
  for (int i = 0; i < kVars; ++i) r.grad_slot(i) = std::conj(f.grad_slot(i));
  for (int n = 0; n < kHessSize; ++n) r.hess_slot(n) = std::conj(f.hess_slot(n));
  for (int n = 0; n < kThirdSize; ++n) r.third_slot(n) = std::conj(f.third_slot(n));
  return r;
}

/// Slotwise real and imaginary parts.
inline RJet real_part(const CJet& f) {
  RJet r(f.value().real());
  r.truncate(f.order());
  for (int i = 0; i < kVars; ++i) r.grad_slot(i) = f.grad_slot(i).real();
  for (int n = 0; n < kHessSize; ++n) r.hess_slot(n) = f.hess_slot(n).real();
  for (int n = 0; n < kThirdSize; ++n) r.third_slot(n) = f.third_slot(n).real();
  return r;
}

inline RJet imag_part(const CJet& f) { return real_part(f * std::complex<double>(0.0, -1.0)); }

using Point = std::array<double, kVars>;
using JetPoint = std::array<RJet, kVars>;

/// Coordinate jets x_0..x_4 at `p`.
inline JetPoint seed(const Point& p, int order = kMaxOrder) {
  JetPoint x;
  for (int i = 0; i < kVars; ++i) x[i] = RJet::variable(p[i], i, order);
  return x;
}

inline Point values(const JetPoint& x) {
  Point p;
  for (int i = 0; i < kVars; ++i) p[i] = x[i].value();
  return p;
}

}  // namespace twz
