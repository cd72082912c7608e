#pragma once

// Numerical smoothness classes along curves.
//
// A probe evaluates a field on both sides of a locus (L_o, or the origin)
// at distances h_k = h0 2^-k and compares the jet partials of each order. The
// gap sequence per order is classified as continuous (-> 0), jump (settles
// at a positive value) or divergent (grows).

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "twz/geometry.hpp"

namespace twz {

enum class Verdict { continuous, jump, divergent };

std::string to_string(Verdict v);

/// r_o^m f_l with f_l = r^-l_r x0^l0 ... x4^l4, extended by zero to L.
struct MonomialSpec {
  int m = 1;
  std::array<int, 6> l{};  // l_r, l0, .., l4

  int s_l() const;
  /// k = min(m, m + s_l); the monomial is C^(k-1) but not C^k.
  int k() const;
};

/// A field sampled as a list of jets (several components are probed together).
using ProbeField = std::function<std::vector<RJet>(const JetPoint&)>;

ProbeField monomial_field(const MonomialSpec& spec);
ProbeField ro2_field();
/// All 15 independent components of g_a.
ProbeField ga_field(double a);
/// One component of g_a.
ProbeField ga_component(int i, int j, double a);

/// Two one-sided branches meeting at `base`: p+(h) on the B side and p-(h)
/// on the L side.
struct CrossingCurve {
  Point base{};
  Point dir_plus{};
  Point dir_minus{};
  double h0 = 0.05;
  int levels = 10;

  Point plus(double h) const;
  Point minus(double h) const;
};

/// Straight transversal line through a point of L_o \ {0}. Throws
/// NonTransversalError if r - |x0| does not change sign across the base or
/// the base is not on L_o.
CrossingCurve crossing_curve(const Point& base, const Point& direction, double h0 = 0.05,
                             int levels = 10);
/// Two rays into the origin, one through B (direction must classify as B_a
/// at small scale) and one through L.
CrossingCurve origin_curve(const Point& dir_b, const Point& dir_l, double h0 = 0.05,
                           int levels = 10);

struct ProbeResult {
  int max_order = 3;
  std::array<Verdict, 4> verdict{};
  std::array<std::vector<double>, 4> gaps{};
  /// First non-continuous order minus one; max_order if all are continuous.
  int smoothness_class() const;
};

/// Thresholds: jump when the last three gaps agree within 5%, divergent when
/// each of the last three halvings grows the gap by more than 1.5x.
Verdict classify_gaps(const std::vector<double>& gaps, double scale);

ProbeResult smoothness_probe(const ProbeField& field, const CrossingCurve& curve,
                             int max_order = 3);

/// Sampled sup of |f_l| over B_a with r <= t.
double boundedness_probe(const MonomialSpec& spec, double t, double a, int samples,
                         unsigned long long rng_seed);

}  // namespace twz
