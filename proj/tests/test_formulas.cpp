#include <gtest/gtest.h>

#include <random>

#include "rch/formulas.hpp"

using namespace rch;

namespace {
PartitionStats S(long long a, long long b, long long c, long long d, long long m, long long i) {
  return {a, b, c, d, m, i};
}
}  // namespace

TEST(Polynomials, FrozenValues) {
  EXPECT_EQ(poly_f(S(0, 0, 0, 0, 0, 0)), 0);
  EXPECT_EQ(poly_f(S(1, 0, 0, 0, 1, 0)), 7);
  EXPECT_EQ(poly_f(S(0, 1, 0, 0, 0, 0)), 5);
  EXPECT_EQ(poly_f(S(1, 0, 0, 0, 2, 3)), 17);

  EXPECT_EQ(poly_h(S(0, 0, 0, 0, 0, 0)), 0);
  EXPECT_EQ(poly_h(S(0, 0, 0, 1, 0, 0)), 8);
  EXPECT_EQ(poly_h(S(1, 0, 0, 0, 2, 3)), 27);
  EXPECT_EQ(poly_h(S(2, 0, 0, 0, 3, 1)), 53);

  EXPECT_EQ(poly_g(S(0, 0, 0, 0, 0, 0)), -28);
  EXPECT_EQ(poly_g(S(0, 0, 0, 1, 0, 0)), -13);
  EXPECT_EQ(poly_g(S(0, 0, 0, 2, 0, 0)), 10);

  EXPECT_EQ(poly_q1(S(0, 0, 0, 0, 0, 0)), 0);
  EXPECT_EQ(poly_q1(S(1, 0, 0, 0, 1, 0)), 6);
  EXPECT_EQ(poly_q1(S(2, 0, 0, 0, 3, 1)), 48);
}

TEST(Polynomials, FixedWidthAgreesWithBigInt) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 2000; ++k) {
    PartitionStats s = S(rng() % 500, rng() % 500, rng() % 500, rng() % 500, rng() % 500, rng() % 500);
    EXPECT_EQ(BigInt(poly_h<long long>(s)), poly_h(s));
    EXPECT_EQ(BigInt(poly_g<long long>(s)), poly_g(s));
    EXPECT_EQ(poly_q1(s), poly_h(s) - s.mu - s.tau1);
  }
}

TEST(Identities, Examples) {
  auto v = check_identity(3, S(2, 1, 3, 0, 1, 4), 2);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.lhs, 2);
  EXPECT_EQ(v.rhs, 2);

  v = check_identity(8, S(0, 0, 5, 1, 2, 2), 3);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.lhs, 21);

  v = check_identity(1, S(4, 2, 7, 1, 3, 9), 0);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.lhs, 0);
}

TEST(Identities, HalvesAreExact) {
  // identity 1 at x = 1, τ₂=τ₃=τ₄=μ=0 gives 1·(1+3)/2 = 2; x = 2 gives 5
  auto v = check_identity(1, S(3, 0, 0, 0, 0, 0), 2);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.lhs, 5);
  v = check_identity(6, S(0, 0, 3, 0, 0, 0), 1);
  EXPECT_EQ(v.rhs, Rational(0));
  v = check_identity(6, S(0, 0, 3, 1, 0, 0), 1);
  EXPECT_EQ(v.rhs, Rational(1));
}

TEST(Identities, RejectsNegativeShift) {
  EXPECT_THROW(check_identity(1, S(1, 0, 0, 0, 0, 0), 2), InputError);
  EXPECT_THROW(check_identity(6, S(0, 0, 0, 5, 0, 0), 1), InputError);
  EXPECT_THROW(check_identity(9, S(0, 0, 0, 0, 0, 0), 0), InputError);
}

TEST(Identities, RandomAdmissiblePoints) {
  std::mt19937_64 rng(2024);
  for (int id = 1; id <= kIdentityCount; ++id) {
    int checked = 0;
    while (checked < 10000) {
      PartitionStats s = S(rng() % 60, rng() % 60, rng() % 60, rng() % 60, rng() % 60, rng() % 60);
      long long x = static_cast<long long>(rng() % 41) - 20;
      if (!identity_shift(id, s, x).non_negative()) continue;
      ASSERT_TRUE(check_identity(id, s, x).holds) << "id " << id;
      ++checked;
    }
  }
}

TEST(ClosedForms, EdgeCountValues) {
  EXPECT_EQ(e1_value(100, 10), 2970);
  EXPECT_EQ(e5_value(100, 31), 4754);
  EXPECT_EQ(e1_value(9, 0), 20);
  EXPECT_EQ(e1_value(9, 1), 24);
  EXPECT_EQ(e3_value(12, 1), 38);
  EXPECT_EQ(e5_value(20, 3), 96);
  EXPECT_EQ(e2_value(12, 2), 46);
  EXPECT_EQ(e4_value(12, 2), 42);
}

TEST(Endpoints, ExactComparison) {
  // (n − 3 − √(2n−3))/4 at n = 14: (11 − 5)/4 = 1.5
  IntervalEndpoint e{11, -1, 25, 4};
  EXPECT_EQ(compare(1, e), -1);
  EXPECT_EQ(compare(2, e), 1);
  // (2 + √4)/4 = 1 exactly
  IntervalEndpoint f{2, 1, 4, 4};
  EXPECT_EQ(compare(1, f), 0);
  IntervalEndpoint g{6, -1, 4, 4};
  EXPECT_EQ(compare(1, g), 0);
  EXPECT_EQ(compare(0, g), -1);
  EXPECT_NEAR(xi_endpoints(60)[2].approx(), 11.546, 1e-3);
}

TEST(Xi, Examples) {
  EXPECT_EQ(xi_piecewise({100, 10}).value, 2970);
  EXPECT_EQ(xi_piecewise({9, 0}).value, 20);
  EXPECT_EQ(xi_piecewise({100, 31}).value, 4754);
  EXPECT_THROW(xi_piecewise({100, 33}), InputError);
  EXPECT_THROW(ProblemParams(100, 34), InputError);
  EXPECT_FALSE(xi_piecewise({100, 10}).note.empty());
}

TEST(Xi, OverlapTakesMaximumWithTie) {
  // n = 60: the second interval is empty and the first overlaps the third.
  auto r = xi_piecewise({60, 12});
  EXPECT_TRUE(r.tie);
  EXPECT_EQ(r.branches, (std::vector<int>{1, 3}));
  EXPECT_EQ(r.value, std::max(e1_value(60, 12), e3_value(60, 12)));
  EXPECT_FALSE(xi_piecewise({60, 5}).tie);
}

TEST(Ex, Examples) {
  EXPECT_EQ(ex_abhp({100, 10}).value, 2970);
  EXPECT_EQ(ex_abhp({6, 1}).value, 12);
  EXPECT_THROW(ex_abhp({9, 3}), InputError);
  for (long long n = 20; n <= 200; ++n)
    for (long long t = 0; 9 * t <= 2 * n - 6; ++t) {
      auto r = ex_abhp({n, t});
      if (r.branches == std::vector<int>{1}) EXPECT_EQ(r.value, xi_branch_value(1, n, t));
    }
}

TEST(ArFirstInterval, Examples) {
  EXPECT_EQ(ar_first_interval({100, 10}).value, 2972);
  EXPECT_TRUE(ar_first_interval({100, 10}).within_hypothesis);
  EXPECT_EQ(ar_first_interval({20, 1}).value, 111);
  EXPECT_EQ(ar_first_interval({9, 0}).value, 22);
  EXPECT_FALSE(ar_first_interval({9, 0}).within_hypothesis);
  for (long long n = 3; n < 80; ++n)
    for (long long t = 0; 3 * t <= n; ++t) EXPECT_EQ(ar_first_interval({n, t}).value, e1_value(n, t) + 2);
}
