#pragma once

// Shared helpers for the unit suites: seeded random points and independent
// finite-difference oracles. Nothing here calls into the jet machinery.

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "twz/jets.hpp"

namespace twz::testing {

using ScalarFn = std::function<double(const Point&)>;

inline Point shifted(Point p, int i, double h) {
  p[i] += h;
  return p;
}

/// Central difference for d f / dx_i.
inline double fd1(const ScalarFn& f, const Point& p, int i, double h) {
  return (f(shifted(p, i, h)) - f(shifted(p, i, -h))) / (2 * h);
}

/// Central difference for d^2 f / dx_i dx_j.
inline double fd2(const ScalarFn& f, const Point& p, int i, int j, double h) {
  if (i == j)
    return (f(shifted(p, i, h)) - 2 * f(p) + f(shifted(p, i, -h))) / (h * h);
  auto g = [&](const Point& q) { return fd1(f, q, j, h); };
  return (g(shifted(p, i, h)) - g(shifted(p, i, -h))) / (2 * h);
}

/// Central difference for d^3 f / dx_i dx_j dx_k, nested on the second order.
inline double fd3(const ScalarFn& f, const Point& p, int i, int j, int k, double h) {
  auto g = [&](const Point& q) { return fd2(f, q, j, k, h); };
  return (g(shifted(p, i, h)) - g(shifted(p, i, -h))) / (2 * h);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Point point(double lo, double hi) {
    Point p;
    for (auto& x : p) x = uniform(lo, hi);
    return p;
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace twz::testing
