#include <gtest/gtest.h>

#include <random>

#include "rch/fact_scan.hpp"

using namespace rch;

namespace {
FactScanOptions exhaustive(Fact f, long long n) {
  FactScanOptions o;
  o.facts = {f};
  o.n_min = o.n_max = n;
  o.exhaustive = true;
  return o;
}
}  // namespace

TEST(FactScan, ParsesSelectors) {
  EXPECT_EQ(parse_facts("2.2(a)"), std::vector<Fact>{Fact::f22a});
  EXPECT_EQ(parse_facts("4.2"), std::vector<Fact>{Fact::f42});
  EXPECT_EQ(parse_facts("all").size(), 5u);
  EXPECT_THROW(parse_facts("2.4"), InputError);
}

// Exhaustive sweep at n = 3000 (n = 3 mod 9): five tuples at the largest t
// exceed the bound, the worst by 101/12.
TEST(FactScan, UpperBoundForSecondClassFailsAtBoundary) {
  FactScanReport r = scan_fact_inequalities(exhaustive(Fact::f22a, 3000));
  const FactTally& t = r.tallies.at(0);
  EXPECT_EQ(t.violations, 5u);
  EXPECT_EQ(t.informational_violations, 0u);
  bool found = false;
  for (const auto& w : t.witnesses) {
    EXPECT_EQ(w["t"], 664);
    if (w["args"]["m"] == 170 && w["args"]["i"] == 665) {
      found = true;
      EXPECT_EQ(w["excess"], "101/12");
      EXPECT_EQ(w["args"]["t2"], 665);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(scan_fact_inequalities(exhaustive(Fact::f22a, 300)).tallies[0].informational_violations, 5u);
  EXPECT_EQ(scan_fact_inequalities(exhaustive(Fact::f22a, 30)).tallies[0].informational_violations, 11u);
}

TEST(FactScan, UpperBoundForSecondClassAwayFromBoundary) {
  EXPECT_TRUE(scan_fact_inequalities(exhaustive(Fact::f22a, 5000)).clean());
  FactScanOptions o;
  o.facts = {Fact::f22a};
  o.n_min = o.n_max = 5000;
  o.samples = 100'000;
  FactScanReport r = scan_fact_inequalities(o);
  EXPECT_EQ(r.tallies[0].tuples, 100'000u);
  EXPECT_EQ(r.tallies[0].violations, 0u);
}

TEST(FactScan, UpperBoundForFirstClassExhaustive) {
  for (long long n : {30, 300, 3000}) {
    FactScanReport r = scan_fact_inequalities(exhaustive(Fact::f22b, n));
    EXPECT_EQ(r.tallies[0].violations + r.tallies[0].informational_violations, 0u) << n;
  }
}

TEST(FactScan, MaxPartEqualityOnlyWithZeroProduct) {
  FactTuple u{0, 0, {0, 5, 3, 2, 4, 7}};
  std::vector<detail::FactCheck> c = detail::fact_checks(Fact::f23, u);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].lhs, c[0].rhs);
  EXPECT_TRUE(c[0].holds());
  EXPECT_TRUE(c[1].holds());

  u.s = {2, 3, 0, 0, 1, 1};
  c = detail::fact_checks(Fact::f23, u);
  EXPECT_TRUE(c[0].strict);
  EXPECT_LT(c[0].lhs, c[0].rhs);
}

TEST(FactScan, MaxPartSampled) {
  FactScanOptions o;
  o.facts = {Fact::f23};
  o.n_min = 1;
  o.n_max = 3000;
  o.samples = 50'000;
  FactScanReport r = scan_fact_inequalities(o);
  EXPECT_TRUE(r.clean());
  EXPECT_EQ(r.tallies[0].checks, 100'000u);
  EXPECT_GT(r.tallies[0].equalities, 0u);
  EXPECT_THROW(scan_fact_inequalities(exhaustive(Fact::f23, 10)), InputError);
}

TEST(FactScan, StabilityWindowFactsAtFourThousand) {
  for (Fact f : {Fact::f41, Fact::f42}) {
    FactScanReport r = scan_fact_inequalities(exhaustive(f, 4000));
    EXPECT_EQ(r.tallies[0].tuples, 400'050u);
    EXPECT_EQ(r.tallies[0].violations, 0u);
  }
  FactTuple u{4000, 800, {800, 1, 0, 0, 0, 0}};
  const long long r = 4000 - 3 * 801;
  u.s.iota = 1;
  u.s.mu = (r - 1) / 2;
  for (const auto& c : detail::fact_checks(Fact::f41, u)) EXPECT_TRUE(c.holds());
  for (const auto& c : detail::fact_checks(Fact::f42, u)) EXPECT_TRUE(c.holds());
  EXPECT_EQ(detail::fact_checks(Fact::f42, u).size(), 2u);
}

// Small orders break the stability-window facts; these are informational.
TEST(FactScan, SmallOrdersAreInformational) {
  FactScanReport a = scan_fact_inequalities(exhaustive(Fact::f41, 30));
  EXPECT_EQ(a.tallies[0].tuples, 280u);
  EXPECT_EQ(a.tallies[0].violations, 0u);
  EXPECT_EQ(a.tallies[0].informational_violations, 35u);
  FactScanReport b = scan_fact_inequalities(exhaustive(Fact::f42, 30));
  EXPECT_EQ(b.tallies[0].informational_violations, 21u);
  EXPECT_TRUE(scan_fact_inequalities(exhaustive(Fact::f41, 60)).clean());
  EXPECT_EQ(scan_fact_inequalities(exhaustive(Fact::f41, 60)).tallies[0].informational_violations, 0u);
}

TEST(FactScan, SampledTuplesAreAdmissible) {
  std::mt19937_64 rng(9);
  for (Fact f : {Fact::f22a, Fact::f22b, Fact::f41, Fact::f42})
    for (int k = 0; k < 5000; ++k) {
      FactTuple u = detail::sample_tuple(f, fact_min_n(f), 400, rng);
      ASSERT_EQ(u.s.vertex_count(), u.n);
      ASSERT_EQ(u.s.triangles(), u.t + 1);
      ASSERT_GE(u.t, 1);
      ASSERT_TRUE(u.s.non_negative());
      if (f == Fact::f22a || f == Fact::f22b) {
        ASSERT_LE(9 * u.t, 2 * u.n - 24);
        ASSERT_GE(u.s.mu, 1);
        ASSERT_GE(u.s.iota, 1);
      } else {
        ASSERT_LT(u.s.iota * u.s.iota, 2 * u.n);
        ASSERT_LE(9 * (u.t - 1), 2 * u.n - 6);
        ASSERT_GE(u.s.tau1, u.t - 1);
      }
    }
}

TEST(FactScan, ScaledChecksMatchRationalBounds) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 2000; ++k) {
    FactTuple u = detail::sample_tuple(Fact::f22a, 17, 5000, rng);
    const Rational rhs = Rational(e1_value(u.n, u.t)) - Rational(u.n, 9) - Rational(49, 12);
    ASSERT_EQ(detail::fact_checks(Fact::f22a, u)[0].holds(), Rational(poly_h(u.s)) <= rhs);
    u = detail::sample_tuple(Fact::f41, 6, 5000, rng);
    ASSERT_EQ(detail::fact_checks(Fact::f41, u)[0].holds(),
              Rational(poly_q1(u.s)) <= Rational(e1_value(u.n, u.t)) + Rational(1, 4));
  }
}

TEST(FactScan, WorkerCountDoesNotChangeReport) {
  FactScanOptions o;
  o.n_min = 20;
  o.n_max = 4000;
  o.samples = 30'000;
  const std::string one = to_json(scan_fact_inequalities(o)).dump();
  o.workers = 3;
  EXPECT_EQ(to_json(scan_fact_inequalities(o)).dump(), one);
}

TEST(FactScan, RejectsEmptyRanges) {
  FactScanOptions o;
  o.facts = {Fact::f22a};
  o.n_min = 1;
  o.n_max = 16;
  EXPECT_THROW(scan_fact_inequalities(o), InputError);
  o.n_max = 17;
  EXPECT_NO_THROW(scan_fact_inequalities(o));
  o.n_min = 20;
  EXPECT_THROW(scan_fact_inequalities(o), InputError);
  o.n_min = 3000;
  o.n_max = 2'000'000;
  EXPECT_THROW(scan_fact_inequalities(o), InputError);
}
