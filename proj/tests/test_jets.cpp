#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "twz/jets.hpp"

namespace twz {
namespace {

using testing::Rng;
using testing::fd1;
using testing::fd2;
using testing::fd3;

TEST(Jets, SeedIsCoordinateFunction) {
  auto x = seed({1, 0, 0, 0, 0});
  EXPECT_EQ(x[0].value(), 1.0);
  EXPECT_EQ(x[0].d(0), 1.0);
  for (int i = 1; i < kVars; ++i) EXPECT_EQ(x[0].d(i), 0.0);
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < kVars; ++j) EXPECT_EQ(x[0].d(i, j), 0.0);

  auto y = seed({0, 2, 0, 0, 0});
  EXPECT_EQ(y[1].value(), 2.0);
  EXPECT_EQ(y[1].d(1), 1.0);
  EXPECT_EQ(y[1].d(0), 0.0);
}

TEST(Jets, LeibnizOnMonomial) {
  auto x = seed({0, 3, 5, 0, 0});
  const RJet p = x[1] * x[2];
  EXPECT_EQ(p.value(), 15.0);
  EXPECT_EQ(p.d(1), 5.0);
  EXPECT_EQ(p.d(2), 3.0);
  EXPECT_EQ(p.d(1, 2), 1.0);
  EXPECT_EQ(p.d(1, 1), 0.0);
  EXPECT_EQ(p.d(1, 2, 2), 0.0);
}

TEST(Jets, ElementaryFunctions) {
  const RJet four(4.0);
  const RJet s = sqrt(four);
  EXPECT_EQ(s.value(), 2.0);
  for (int i = 0; i < kVars; ++i) EXPECT_EQ(s.d(i), 0.0);

  auto x = seed({0, 1, 0, 0, 0});
  RJet r2 = x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4];
  EXPECT_DOUBLE_EQ(log(r2).d(1), 2.0);
}

TEST(Jets, InverseRadiusAgainstFiniteDifferences) {
  const Point p{0, 2, 0, 0, 0};
  auto x = seed(p);
  RJet r = sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4]);
  RJet f = 1.0 / r;
  auto plain = [](const Point& q) {
    return 1.0 / std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3] + q[4] * q[4]);
  };
  const double fd = fd2(plain, p, 1, 1, 1e-4);
  EXPECT_LT(std::abs(f.d(1, 1) - fd) / std::abs(fd), 1e-6);
  EXPECT_DOUBLE_EQ(f.d(1, 1), 2.0 / 8.0);  // d^2/dx^2 of 1/x at 2
}

TEST(Jets, ExtractConvention) {
  auto x = seed({0.3, 0.7, 0, 0, 0});
  EXPECT_EQ(x[0].partial({0}), 1.0);
  EXPECT_EQ((x[0] * x[1]).partial({0, 1}), 1.0);

  auto y = seed({0, 1, 0, 0, 0});
  RJet r2 = y[1] * y[1] + y[2] * y[2] + y[3] * y[3] + y[4] * y[4];
  RJet r4 = r2 * r2;
  EXPECT_DOUBLE_EQ(r4.partial({1, 1, 1}), 24.0);
  auto plain = [](const Point& q) {
    const double s = q[1] * q[1] + q[2] * q[2] + q[3] * q[3] + q[4] * q[4];
    return s * s;
  };
  EXPECT_NEAR(fd3(plain, {0, 1, 0, 0, 0}, 1, 1, 1, 1e-3), 24.0, 1e-4);

  const std::vector<int> too_long{0, 1, 2, 3};
  EXPECT_THROW(r4.partial(too_long), OrderError);
}

TEST(Jets, DomainErrors) {
  EXPECT_THROW(sqrt(RJet(-1.0)), DomainError);
  EXPECT_THROW(sqrt(RJet(0.0)), DomainError);
  EXPECT_THROW(log(RJet(0.0)), DomainError);
  EXPECT_THROW(RJet(1.0) / RJet(0.0), DomainError);
  const std::array<RJet, 2> args{RJet(1.0), RJet(0.0)};
  EXPECT_THROW(jet_apply<double>(JetFn::div, args), DomainError);
}

TEST(Jets, OrderTracking) {
  auto x = seed({0.5, 0.2, 0.1, 0.3, 0.4});
  RJet f = x[0] * x[0] * x[1];
  RJet df = diff(f, 0);  // 2 x0 x1
  EXPECT_EQ(df.order(), 2);
  EXPECT_DOUBLE_EQ(df.value(), 2 * 0.5 * 0.2);
  EXPECT_DOUBLE_EQ(df.d(1), 1.0);
  EXPECT_DOUBLE_EQ(df.d(0, 1), 2.0);
  EXPECT_THROW(df.d(0, 1, 1), OrderError);
  RJet mixed = df * f;
  EXPECT_EQ(mixed.order(), 2);
  RJet low = RJet(f).truncate(1);
  EXPECT_THROW(low.d(0, 0), OrderError);
  EXPECT_THROW(diff(diff(diff(diff(f, 0), 0), 0), 0), OrderError);
}

TEST(Jets, JetApplyMatchesOperators) {
  auto x = seed({0.4, 1.1, -0.3, 0.2, 0.9});
  const std::array<RJet, 2> ab{x[1], x[2] + 2.0};
  const RJet prod = jet_apply<double>(JetFn::mul, ab);
  const RJet direct = x[1] * (x[2] + 2.0);
  for (int n = 0; n < kThirdSize; ++n) EXPECT_EQ(prod.third_slot(n), direct.third_slot(n));
  const std::array<RJet, 1> one{x[1]};
  const RJet cube = jet_apply<double>(JetFn::pow_int, one, 3);
  EXPECT_DOUBLE_EQ(cube.d(1, 1, 1), 6.0);
  EXPECT_DOUBLE_EQ(cube.d(1, 1), 6.0 * 1.1);
}

TEST(Jets, ComplexScalarsReuseRealImplementation) {
  auto x = seed({0.2, 0.5, 0.1, 0.0, 0.0});
  const CJet z = CJet(x[1]) + CJet(x[2]) * std::complex<double>(0, 1);
  const CJet z2 = z * z;  // (x1 + i x2)^2
  EXPECT_NEAR(z2.value().real(), 0.25 - 0.01, 1e-15);
  EXPECT_NEAR(z2.value().imag(), 0.1, 1e-15);
  EXPECT_NEAR(z2.d(1, 2).imag(), 2.0, 1e-15);
  EXPECT_NEAR(z2.d(2, 2).real(), -2.0, 1e-15);
  EXPECT_THROW(sqrt(CJet(std::complex<double>(1, 1))), DomainError);
}

// Random smooth composites built from coordinates with +,-,*,/,sqrt,ln.
// The same program is evaluated on doubles (oracle via finite differences)
// and on jets.
struct Program {
  struct Op {
    int kind;  // 0 var, 1 const, 2 add, 3 mul, 4 div, 5 sqrt, 6 ln
    int var;
    double c;
  };
  std::vector<Op> ops;

  template <typename S>
  S eval(const std::array<S, kVars>& x) const {
    using std::log;
    using std::sqrt;
    std::vector<S> stack;
    for (const auto& op : ops) {
      switch (op.kind) {
        case 0: stack.push_back(x[op.var]); break;
        case 1: stack.push_back(S(op.c)); break;
        case 2: case 3: case 4: {
          S b = stack.back(); stack.pop_back();
          S a = stack.back(); stack.pop_back();
          if (op.kind == 2) stack.push_back(a + b);
          else if (op.kind == 3) stack.push_back(a * b);
          else stack.push_back(a / (b * b + 0.5));
          break;
        }
        case 5: { S a = stack.back(); stack.pop_back(); stack.push_back(sqrt(a * a + 0.7)); break; }
        case 6: { S a = stack.back(); stack.pop_back(); stack.push_back(log(a * a + 0.4)); break; }
      }
    }
    return stack.back();
  }
};

Program random_program(Rng& rng, int leaves) {
  Program p;
  int depth = 0;
  int pushed = 0;
  while (pushed < leaves || depth > 1) {
    const bool can_push = pushed < leaves;
    const int choice = rng.integer(0, 9);
    if (depth >= 2 && (!can_push || choice < 4)) {
      p.ops.push_back({rng.integer(2, 4), 0, 0});
      --depth;
    } else if (depth >= 1 && choice < 6) {
      p.ops.push_back({rng.integer(5, 6), 0, 0});
    } else if (can_push) {
      if (rng.integer(0, 4) == 0)
        p.ops.push_back({1, 0, rng.uniform(-1.5, 1.5)});
      else
        p.ops.push_back({0, rng.integer(0, kVars - 1), 0});
      ++depth;
      ++pushed;
    }
  }
  return p;
}

// Cancels the h^2 truncation term of the nested central difference.
double fd3_richardson(const testing::ScalarFn& f, const Point& p, int i, int j, int k, double h) {
  return (4 * fd3(f, p, i, j, k, h / 2) - fd3(f, p, i, j, k, h)) / 3;
}

TEST(Jets, RandomCompositesMatchFiniteDifferences) {
  Rng rng(20260518);
  int programs = 0;
  for (; programs < 200; ++programs) {
    const Program prog = random_program(rng, rng.integer(2, 5));
    auto plain = [&](const Point& q) { return prog.eval<double>(q); };
    for (int s = 0; s < 50; ++s) {
      const Point p = rng.point(-1, 1);
      const RJet f = prog.eval<RJet>(seed(p));
      ASSERT_NEAR(f.value(), plain(p), 1e-13 * std::max(1.0, std::abs(plain(p))));
      for (int i = 0; i < kVars; ++i)
        ASSERT_LT(testing::rel_err(f.d(i), fd1(plain, p, i, 1e-5)), 1e-5);
      for (const auto& [i, j] : detail::kTables.pairs)
        ASSERT_LT(testing::rel_err(f.d(i, j), fd2(plain, p, i, j, 1e-4)), 1e-4);
      for (const auto& [i, j, k] : detail::kTables.triples)
        ASSERT_LT(testing::rel_err(f.d(i, j, k), fd3_richardson(plain, p, i, j, k, 2e-3)), 1e-4);
    }
  }
  EXPECT_EQ(programs, 200);
}

TEST(Jets, HigherOrdersFullyCheckedOnOneComposite) {
  Rng rng(7);
  const Program prog = random_program(rng, 5);
  auto plain = [&](const Point& q) { return prog.eval<double>(q); };
  const Point p = rng.point(-1, 1);
  const RJet f = prog.eval<RJet>(seed(p));
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < kVars; ++j) {
      EXPECT_LT(testing::rel_err(f.d(i, j), fd2(plain, p, i, j, 1e-4)), 1e-4);
      for (int k = 0; k < kVars; ++k)
        EXPECT_LT(testing::rel_err(f.d(i, j, k), fd3(plain, p, i, j, k, 1e-3)), 1e-4);
    }
}

TEST(Jets, SymmetricStorageIsExact) {
  Rng rng(11);
  const Program prog = random_program(rng, 4);
  const RJet f = prog.eval<RJet>(seed(rng.point(-1, 1)));
  for (int i = 0; i < kVars; ++i)
    for (int j = 0; j < kVars; ++j) {
      EXPECT_EQ(f.d(i, j), f.d(j, i));
      for (int k = 0; k < kVars; ++k) {
        EXPECT_EQ(f.d(i, j, k), f.d(k, i, j));
        EXPECT_EQ(f.d(i, j, k), f.d(j, k, i));
      }
    }
}

}  // namespace
}  // namespace twz
