#include "twz/sampling.hpp"

#include <cmath>
#include <random>

#include "twz/errors.hpp"
#include "twz/frames.hpp"

namespace twz {

std::string to_string(SampleRegion r) {
  switch (r) {
    case SampleRegion::B_a: return "B_a";
    case SampleRegion::L_interior: return "L_interior";
    case SampleRegion::Closure: return "closure";
    case SampleRegion::Ca: return "C_a";
  }
  return "unknown";
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

namespace {

bool accept(SampleRegion region, const Point& p, double a, const Exclusions& ex,
            const SampleOptions& opt) {
  const double r = radius(p);
  if (opt.max_r > 0.0 && r > opt.max_r) return false;
  if (opt.max_abs_x0 > 0.0 && std::abs(p[0]) > opt.max_abs_x0) return false;
  if (r < ex.axis) return false;
  if (std::abs(r - std::abs(p[0])) / std::sqrt(2.0) < ex.cone) return false;
  const RegionTag tag = classify(p, a).tag;
  const bool in_b = tag == RegionTag::B_a && a * ro_value(p) <= ex.ro_margin;
  const bool in_l = tag == RegionTag::L_interior;
  switch (region) {
    case SampleRegion::B_a: return in_b;
    case SampleRegion::L_interior: return in_l;
    case SampleRegion::Closure: return in_b || in_l;
    case SampleRegion::Ca: return in_l || (in_b && in_Ca(p, a));
  }
  return false;
}

}  // namespace

std::vector<Point> sample(SampleRegion region, double a, int n, std::uint64_t seed,
                          const Exclusions& ex, const SampleOptions& opt) {
  if (n < 0) throw ConfigError("negative sample count");
  static constexpr int kBases[5] = {2, 3, 5, 7, 11};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double shift[5];
  for (double& s : shift) s = unit(rng);
  const double box = opt.box > 0.0 ? opt.box : 1.0 / a;
  std::vector<Point> out;
  out.reserve(n);
  const std::uint64_t limit = 2000ull * static_cast<std::uint64_t>(std::max(n, 1));
  for (std::uint64_t i = 1; i <= limit && static_cast<int>(out.size()) < n; ++i) {
    Point p;
    for (int k = 0; k < 5; ++k) {
      double u = radical_inverse(i, kBases[k]) + shift[k];
      u -= std::floor(u);
      p[k] = box * (2.0 * u - 1.0);
    }
    if (accept(region, p, a, ex, opt)) out.push_back(p);
  }
  if (static_cast<int>(out.size()) < n)
    throw EmptyRegionError("region " + to_string(region) + " is empty after exclusions");
  return out;
}

}  // namespace twz
