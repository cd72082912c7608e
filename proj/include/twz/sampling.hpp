#pragma once

// Deterministic low-discrepancy sampling of the cone regions.
//
// Points come from the Halton sequence in bases 2, 3, 5, 7, 11 with a
// Cranley-Patterson rotation drawn from the seed, mapped to a box and
// filtered by rejection.

#include <cstdint>
#include <string>
#include <vector>

#include "twz/geometry.hpp"

namespace twz {

enum class SampleRegion {
  B_a,         // outside the cone, a r_o < 1
  L_interior,  // r < |x0|
  Closure,     // B_a or L_interior
  Ca,          // B_a points with 4 x0^2 rho < 1 and k > 0, plus L_interior
};

std::string to_string(SampleRegion r);

struct Exclusions {
  double cone = 1e-3;     // min distance |r - |x0|| / sqrt(2) to L_o
  double axis = 1e-3;     // min r
  double ro_margin = 0.95;  // a r_o <= margin on B_a
};

struct SampleOptions {
  double box = 0.0;    // half-width of the sampling box; 0 means 1/a
  double max_r = 0.0;  // keep only r <= max_r when positive
  double max_abs_x0 = 0.0;  // keep only |x0| <= max when positive
};

/// Throws EmptyRegionError when fewer than n points survive 2000 n candidates.
std::vector<Point> sample(SampleRegion region, double a, int n, std::uint64_t seed,
                          const Exclusions& ex = {}, const SampleOptions& opt = {});

/// Radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, int base);

}  // namespace twz
