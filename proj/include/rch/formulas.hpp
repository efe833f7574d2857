#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rch/common.hpp"

namespace rch {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Class sizes of an ideal partition together with the matching and
/// singleton counts. Also used as the formal arguments of f, h, g.
struct PartitionStats {
  long long tau1 = 0;
  long long tau2 = 0;
  long long tau3 = 0;
  long long tau4 = 0;
  long long mu = 0;
  long long iota = 0;

  long long triangles() const { return tau1 + tau2 + tau3 + tau4; }
  long long vertex_count() const { return 3 * triangles() + 2 * mu + iota; }
  bool non_negative() const { return tau1 >= 0 && tau2 >= 0 && tau3 >= 0 && tau4 >= 0 && mu >= 0 && iota >= 0; }
  friend bool operator==(const PartitionStats&, const PartitionStats&) = default;
};

struct ProblemParams {
  long long n = 0;
  long long t = 0;

  ProblemParams() = default;
  ProblemParams(long long n_, long long t_) : n(n_), t(t_) {
    require(n >= 3, "n must be at least 3");
    require(t >= 0 && 3 * t <= n, "t must lie in [0, n/3]");
  }
};

template <class Int>
Int binom2(const Int& k) {
  return k * (k - 1) / 2;
}

template <class Int = BigInt>
Int poly_f(const PartitionStats& s) {
  const Int t1 = s.tau1, t2 = s.tau2, t3 = s.tau3, t4 = s.tau4, mu = s.mu, io = s.iota;
  return 4 * mu * t1 + 2 * io * t1 + 7 * binom2(t1) + 3 * t1 + 2 * io * t2 + 8 * binom2(t2) + 3 * t2 +
         8 * binom2(t3) + 8 * t3 * t4 + 3 * t3 + 7 * t1 * t2 + (2 + 3 * mu) * t2 + 7 * t1 * (t3 + t4) +
         (3 + 3 * mu) * t3 + 8 * t2 * (t3 + t4) + (2 + io) * t3;
}

namespace detail {
// The part shared by h and g: f + ιμ + μ² + (3μ+3)τ₄ + (ι+2)τ₄.
template <class Int>
Int hg_common(const PartitionStats& s) {
  const Int t4 = s.tau4, mu = s.mu, io = s.iota;
  return poly_f<Int>(s) + io * mu + mu * mu + (3 * mu + 3) * t4 + (io + 2) * t4;
}
}  // namespace detail

template <class Int = BigInt>
Int poly_h(const PartitionStats& s) {
  const Int t4 = s.tau4;
  return detail::hg_common<Int>(s) + binom2(Int(3 * t4));
}

template <class Int = BigInt>
Int poly_g(const PartitionStats& s) {
  const Int t4 = s.tau4;
  return detail::hg_common<Int>(s) + 8 * binom2(t4) + 10 * t4 - 28;
}

template <class Int = BigInt>
Int poly_q1(const PartitionStats& s) {
  return poly_h<Int>(s) - s.mu - s.tau1;
}

/// Threshold in the sparse-𝒯₄ lemma: 8·C(τ₄,2) + 10τ₄ − 28.
inline long long t4_sparse_threshold(long long t4) { return 8 * (t4 * (t4 - 1) / 2) + 10 * t4 - 28; }

// ---------------------------------------------------------------------------
// Shift identities for h and g.

inline constexpr int kIdentityCount = 8;

struct IdentityVerdict {
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

/// The argument tuple that identity `id` compares against `s`.
inline PartitionStats identity_shift(int id, const PartitionStats& s, long long x) {
  PartitionStats r = s;
  switch (id) {
    case 1: r.tau1 -= x; r.tau2 += x; break;
    case 2: r.tau1 += x; r.tau3 -= x; break;
    case 3: r.tau2 += x; r.tau3 -= x; break;
    case 4: r.tau1 += x; r.tau4 -= x; break;
    case 5: case 7: r.tau2 += x; r.tau4 -= x; break;
    case 6: case 8: r.tau3 -= x; r.tau4 += x; break;
    default: throw InputError("identity id must lie in [1, 8]");
  }
  return r;
}

/// Evaluates poly(shifted) − poly(s) and the closed-form right-hand side.
/// Halves are avoided by comparing doubled values as integers.
inline IdentityVerdict check_identity(int id, const PartitionStats& s, long long x) {
  require(s.non_negative(), "identity arguments must be non-negative");
  const PartitionStats shifted = identity_shift(id, s, x);
  require(shifted.non_negative(), "shift makes an argument negative");

  const BigInt t2 = s.tau2, t3 = s.tau3, t4 = s.tau4, mu = s.mu, io = s.iota, X = x;
  BigInt lhs2 = id <= 6 ? BigInt(2 * (poly_h(shifted) - poly_h(s))) : BigInt(2 * (poly_g(shifted) - poly_g(s)));
  BigInt rhs2;
  switch (id) {
    case 1: rhs2 = X * (X + 2 * t2 + 2 * t3 + 2 * t4 - 2 * mu + 3); break;
    case 2: rhs2 = X * (X - 2 * t2 - 2 * t3 - 2 * t4 + 2 * mu + 2 * io - 9); break;
    case 3: rhs2 = 2 * (io - 3) * X; break;
    case 4: rhs2 = 2 * X * (X - t2 - t3 - 2 * t4 + mu + io - 4); break;
    case 5: rhs2 = X * (X - 2 * t4 + 2 * io - 5); break;
    case 6: rhs2 = X * (X + 2 * t4 - 1); break;
    case 7: rhs2 = 2 * (io - 10) * X; break;
    case 8: rhs2 = 14 * X; break;
  }
  IdentityVerdict v;
  v.holds = lhs2 == rhs2;
  v.lhs = Rational(lhs2, 2);
  v.rhs = Rational(rhs2, 2);
  return v;
}

// ---------------------------------------------------------------------------
// Closed-form edge counts of the extremal constructions.

inline BigInt ceil_floor_half(long long k) { return BigInt((k + 1) / 2) * (k / 2); }

inline BigInt e1_value(long long n, long long t) {
  return binom2(BigInt(t)) + BigInt(t) * (n - t) + ceil_floor_half(n - t);
}
inline BigInt e2_value(long long n, long long t) { return binom2(BigInt(2 * t + 1)) + ceil_floor_half(n); }
inline BigInt e3_value(long long n, long long t) {
  return binom2(BigInt(2 * t + 2)) + BigInt(2 * t + 2) * (n - 2 * t - 2);
}
inline BigInt e4_value(long long n, long long t) {
  return binom2(BigInt(6 * t - n + 6)) + BigInt(n - 3 * t - 3) * (3 * t + 3);
}
inline BigInt e5_value(long long n, long long t) { return binom2(BigInt(3 * t + 5)) + (n - 3 * t - 6); }
inline BigInt gamma3_value(long long n, long long t) {
  return binom2(BigInt(2 * t + 1)) + BigInt(2 * t + 1) * (n - 2 * t - 1);
}
inline BigInt gamma4_value(long long n, long long t) {
  return binom2(BigInt(6 * t - n + 4)) + BigInt(3 * t + 2) * (n - 3 * t - 2);
}

// Part-size constraints, shared with the graph builders.
inline bool e1_valid(long long n, long long t) { return t >= 0 && n >= t; }
inline bool e2_valid(long long n, long long t) { return t >= 0 && (n + 1) / 2 >= 2 * t + 1; }
inline bool e3_valid(long long n, long long t) { return t >= 0 && n >= 2 * t + 2; }
inline bool e4_valid(long long n, long long t) { return t >= 0 && 6 * t - n + 6 >= 0 && n - 3 * t - 3 >= 0; }
inline bool e5_valid(long long n, long long t) { return t >= 0 && n >= 3 * t + 6; }
inline bool gamma3_valid(long long n, long long t) { return t >= 0 && n >= 2 * t + 1; }
inline bool gamma4_valid(long long n, long long t) { return t >= 0 && 6 * t - n + 4 >= 0 && n - 3 * t - 2 >= 0; }

// ---------------------------------------------------------------------------
// Exact interval endpoints of the form (a + sign·√d) / c.

struct IntervalEndpoint {
  long long a = 0;
  int sign = 0;
  long long d = 0;
  long long c = 1;

  double approx() const;
};

/// Sign of t − endpoint, computed without floating point.
inline int compare(long long t, const IntervalEndpoint& e) {
  const BigInt lhs = BigInt(e.c) * t - e.a;  // compare against sign·√d
  const BigInt sq = lhs * lhs;
  const BigInt d = e.d;
  if (e.sign == 0 || e.d == 0) return lhs > 0 ? 1 : (lhs < 0 ? -1 : 0);
  if (e.sign > 0) {
    if (lhs < 0) return -1;
    return sq > d ? 1 : (sq < d ? -1 : 0);
  }
  if (lhs >= 0) return 1;
  return d > sq ? 1 : (d < sq ? -1 : 0);
}

inline double IntervalEndpoint::approx() const {
  return (static_cast<double>(a) + sign * std::sqrt(static_cast<double>(d))) / static_cast<double>(c);
}

/// Six endpoints bounding the five Ξ intervals.
inline std::array<IntervalEndpoint, 6> xi_endpoints(long long n) {
  return {{{0, 0, 0, 1},
           {2 * n - 6, 0, 0, 9},
           {n - 3, -1, 2 * n - 3, 4},
           {5 * n - 20, 1, 3 * n * n - 2 * n + 4, 22},
           {2 * n - 3, -1, 16 * n - 7, 6},
           {n, 0, 0, 3}}};
}

/// Five endpoints bounding the four ex(n,(t+1)K₃) intervals.
inline std::array<IntervalEndpoint, 5> ex_endpoints(long long n) {
  return {{{0, 0, 0, 1},
           {2 * n - 6, 0, 0, 9},
           {n - 1, 0, 0, 4},
           {5 * n - 12, 1, 3 * n * n - 10 * n + 12, 22},
           {n, 0, 0, 3}}};
}

inline const char* const kXiNote =
    "Xi is the bare maximum of the construction edge counts; the conjectured anti-Ramsey number is Xi + 2. "
    "Reading the construction maximum as already including the +2 would count the constant twice.";

struct PiecewiseResult {
  BigInt value;
  std::vector<int> branches;  // containing intervals whose construction is valid
  bool tie = false;           // t lies in more than one interval
  std::string note;
};

namespace detail {
template <std::size_t K, class ValueFn, class ValidFn>
PiecewiseResult evaluate_piecewise(long long t, const std::array<IntervalEndpoint, K>& ends, ValueFn value,
                                   ValidFn valid) {
  PiecewiseResult r;
  int containing = 0;
  for (std::size_t k = 1; k < K; ++k) {
    if (compare(t, ends[k - 1]) < 0 || compare(t, ends[k]) > 0) continue;
    ++containing;
    const int branch = static_cast<int>(k);
    if (!valid(branch)) continue;
    BigInt v = value(branch);
    if (r.branches.empty() || v > r.value) r.value = v;
    r.branches.push_back(branch);
  }
  r.tie = containing > 1;
  if (r.branches.empty())
    throw InputError(containing == 0 ? "t lies in no interval of the piecewise formula"
                                     : "the branch containing t has a negative part size");
  return r;
}
}  // namespace detail

inline BigInt xi_branch_value(int branch, long long n, long long t) {
  switch (branch) {
    case 1: return e1_value(n, t);
    case 2: return e2_value(n, t);
    case 3: return e3_value(n, t);
    case 4: return e4_value(n, t);
    case 5: return e5_value(n, t);
  }
  throw InputError("xi branch must lie in [1, 5]");
}

inline bool xi_branch_valid(int branch, long long n, long long t) {
  switch (branch) {
    case 1: return e1_valid(n, t);
    case 2: return e2_valid(n, t);
    case 3: return e3_valid(n, t);
    case 4: return e4_valid(n, t);
    case 5: return e5_valid(n, t);
  }
  return false;
}

inline BigInt ex_branch_value(int branch, long long n, long long t) {
  switch (branch) {
    case 1: return e1_value(n, t);
    case 2: return e2_value(n, t);
    case 3: return gamma3_value(n, t);
    case 4: return gamma4_value(n, t);
  }
  throw InputError("ex branch must lie in [1, 4]");
}

inline bool ex_branch_valid(int branch, long long n, long long t) {
  switch (branch) {
    case 1: return e1_valid(n, t);
    case 2: return e2_valid(n, t);
    case 3: return gamma3_valid(n, t);
    case 4: return gamma4_valid(n, t);
  }
  return false;
}

/// Piecewise Ξ(n,t). Intervals whose endpoints come out of order (small n)
/// are empty; overlaps resolve to the maximum with `tie` set.
inline PiecewiseResult xi_piecewise(const ProblemParams& p) {
  PiecewiseResult r = detail::evaluate_piecewise(
      p.t, xi_endpoints(p.n), [&](int k) { return xi_branch_value(k, p.n, p.t); },
      [&](int k) { return xi_branch_valid(k, p.n, p.t); });
  r.note = kXiNote;
  return r;
}

/// Turán number ex(n,(t+1)K₃) by the four-branch closed form.
inline PiecewiseResult ex_abhp(const ProblemParams& p) {
  return detail::evaluate_piecewise(
      p.t, ex_endpoints(p.n), [&](int k) { return ex_branch_value(k, p.n, p.t); },
      [&](int k) { return ex_branch_valid(k, p.n, p.t); });
}

/// Number of colors N = ex(n,(t+1)K₃) + 2 used by the stability setting.
inline BigInt color_threshold(const ProblemParams& p) { return ex_abhp(p).value + 2; }

/// Whether t ≤ (2n−6)/9 − 2.
inline bool in_first_interval_hypothesis(long long n, long long t) { return 9 * t <= 2 * n - 24; }

struct AntiRamseyValue {
  BigInt value;
  bool within_hypothesis = true;
};

/// C(t,2) + t(n−t) + ⌈(n−t)/2⌉⌊(n−t)/2⌋ + 2. Evaluated outside the proven
/// range too; `within_hypothesis` says which case applies.
inline AntiRamseyValue ar_first_interval(const ProblemParams& p) {
  return {e1_value(p.n, p.t) + 2, in_first_interval_hypothesis(p.n, p.t)};
}

inline std::string to_string(const BigInt& v) { return v.str(); }
inline std::string to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace rch
