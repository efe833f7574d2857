#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "rch/formulas.hpp"
#include "rch/lemmas.hpp"
#include "rch/parallel.hpp"

namespace rch {

enum class Fact { f22a, f22b, f23, f41, f42 };

inline constexpr Fact kAllFacts[] = {Fact::f22a, Fact::f22b, Fact::f23, Fact::f41, Fact::f42};

/// Below this order the "n large enough" facts are only informational.
inline constexpr long long kFactAssertMinN = 3000;
inline constexpr long long kFactScanMaxN = 1'000'000;

inline std::string to_string(Fact f) {
  switch (f) {
    case Fact::f22a: return "2.2a";
    case Fact::f22b: return "2.2b";
    case Fact::f23: return "2.3";
    case Fact::f41: return "4.1";
    case Fact::f42: return "4.2";
  }
  return "?";
}

/// Accepts "2.2a", "2.2(a)", ..., and "all".
inline std::vector<Fact> parse_facts(const std::string& s) {
  if (s == "all") return {std::begin(kAllFacts), std::end(kAllFacts)};
  std::string k;
  for (char c : s)
    if (c != '(' && c != ')') k += c;
  for (Fact f : kAllFacts)
    if (to_string(f) == k) return {f};
  throw InputError("unknown fact " + s + " (expected 2.2a, 2.2b, 2.3, 4.1, 4.2 or all)");
}

/// True when the fact makes no large-n assumption.
inline bool fact_unconditional(Fact f) { return f == Fact::f23; }

/// Smallest n with a non-empty admissible set.
inline long long fact_min_n(Fact f) {
  switch (f) {
    case Fact::f22a:
    case Fact::f22b: return 17;  // needs 1 <= t <= (2n-24)/9
    case Fact::f23: return 0;
    case Fact::f41:
    case Fact::f42: return 6;  // needs 1 <= t <= n/3 - 1
  }
  return 0;
}

struct FactScanOptions {
  std::vector<Fact> facts{std::begin(kAllFacts), std::end(kAllFacts)};
  long long n_min = kFactAssertMinN;
  long long n_max = 10'000;
  bool exhaustive = false;       // every admissible tuple for each n; not for 2.3
  std::uint64_t samples = 100'000;  // per fact, sampled mode only
  std::uint64_t seed = 1;
  int workers = 1;
  std::size_t max_witnesses = 20;
};

struct FactTally {
  Fact fact = Fact::f22a;
  std::uint64_t tuples = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;                // asserted
  std::uint64_t informational_violations = 0;  // below the large-n threshold
  std::uint64_t equalities = 0;                // 2.3: max part attained with t1*t2 = 0
  std::vector<nlohmann::json> witnesses;
};

struct FactScanReport {
  FactScanOptions options;
  std::vector<FactTally> tallies;

  std::uint64_t violations() const {
    std::uint64_t v = 0;
    for (const FactTally& t : tallies) v += t.violations;
    return v;
  }
  bool clean() const { return violations() == 0; }
};

/// One admissible point: the order, the parameter t (unused for 2.3) and the
/// arguments of the functions.
struct FactTuple {
  long long n = 0;
  long long t = 0;
  PartitionStats s;
};

namespace detail {

inline long long fact_t_max(Fact f, long long n) {
  if (f == Fact::f22a || f == Fact::f22b) return (2 * n - 24) / 9;
  return std::min((2 * n - 6) / 9 + 1, n / 3 - 1);
}

/// Admissible values of i for a given r = n - 3(t+1).
inline std::pair<long long, long long> fact_i_range(Fact f, long long n, long long r) {
  if (f == Fact::f22a || f == Fact::f22b) return {2 - r % 2, r - 2};
  long long hi = 0;
  while ((hi + 1) * (hi + 1) < 2 * n) ++hi;
  hi = std::min(hi, r);
  if ((r - hi) % 2) --hi;
  return {r % 2, hi};
}

struct FactCheck {
  std::string part;
  BigInt lhs;  // scaled by `scale`
  BigInt rhs;
  long long scale = 1;
  bool strict = false;
  bool holds() const { return strict ? lhs < rhs : lhs <= rhs; }
};

inline std::vector<FactCheck> fact_checks(Fact f, const FactTuple& u) {
  using I = long long;
  const PartitionStats& s = u.s;
  const I n = u.n, t = u.t;
  switch (f) {
    case Fact::f22a: {
      const I e1 = static_cast<I>(e1_value(n, t));
      return {{"h(0,t+1,0,0,m,i) <= e1 - n/9 - 49/12", 36 * BigInt(poly_h<I>(s)), 36 * BigInt(e1) - 4 * n - 147, 36}};
    }
    case Fact::f22b: {
      const I e1 = static_cast<I>(e1_value(n, t));
      return {{"h(t+1,0,0,0,m,i) <= e1 + (2n - i^2 - 2t - 2)/4", 4 * BigInt(poly_h<I>(s)),
               4 * BigInt(e1) - s.iota * s.iota + 2 * n - 2 * t - 2, 4}};
    }
    case Fact::f23: {
      PartitionStats a = s, b = s, c = s;
      a.tau1 = s.tau1 + s.tau2, a.tau2 = 0;
      b.tau1 = 0, b.tau2 = s.tau1 + s.tau2;
      c.tau3 = 0, c.tau4 = s.tau3 + s.tau4;
      const I fmax = std::max(poly_f<I>(a), poly_f<I>(b));
      return {{"f <= max(f(t1+t2,0,..), f(0,t1+t2,..)), strict when t1*t2 > 0", poly_f<I>(s), fmax, 1,
               s.tau1 * s.tau2 > 0},
              {"h <= h(t1,t2,0,t3+t4,m,i)", poly_h<I>(s), poly_h<I>(c), 1}};
    }
    case Fact::f41: {
      const I e1 = static_cast<I>(e1_value(n, t));
      return {{"q1 <= e1 + 1/4", 4 * BigInt(poly_q1<I>(s)), 4 * BigInt(e1) + 1, 4}};
    }
    case Fact::f42: {
      const I e1 = static_cast<I>(e1_value(n, t)), h = poly_h<I>(s);
      std::vector<FactCheck> out{{"h <= e1 + (n-t-1)/2", 2 * BigInt(h), 2 * BigInt(e1) + n - t - 1, 2}};
      if (t + 1 - s.tau1 > 0) out.push_back({"h <= e1 + t + 6 when t1 < t+1", h, BigInt(e1) + t + 6, 1});
      return out;
    }
  }
  return {};
}

inline FactTuple sample_tuple(Fact f, long long n_lo, long long n_hi, std::mt19937_64& rng) {
  auto uni = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  FactTuple u;
  u.n = uni(n_lo, n_hi);
  if (f == Fact::f23) {
    const long long cap = std::max<long long>(u.n / 3, 1);
    // A quarter of the points put t1 or t2 at zero so the equality case is exercised.
    const int zero = static_cast<int>(uni(0, 7));
    u.s = {zero == 0 ? 0 : uni(0, cap), zero == 1 ? 0 : uni(0, cap), uni(0, cap), uni(0, cap), uni(0, cap),
           uni(0, cap)};
    return u;
  }
  u.t = uni(1, fact_t_max(f, u.n));
  const long long r = u.n - 3 * (u.t + 1);
  const auto [ilo, ihi] = fact_i_range(f, u.n, r);
  u.s.iota = ilo + 2 * uni(0, (ihi - ilo) / 2);
  u.s.mu = (r - u.s.iota) / 2;
  if (f == Fact::f22a) u.s.tau2 = u.t + 1;
  if (f == Fact::f22b) u.s.tau1 = u.t + 1;
  if (f == Fact::f41 || f == Fact::f42) {
    u.s.tau1 = uni(u.t - 1, u.t + 1);
    const long long rest = u.t + 1 - u.s.tau1;
    u.s.tau2 = uni(0, rest);
    u.s.tau3 = uni(0, rest - u.s.tau2);
    u.s.tau4 = rest - u.s.tau2 - u.s.tau3;
  }
  return u;
}

/// Every admissible tuple for one n, in a fixed order.
template <class Visit>
void enumerate_tuples(Fact f, long long n, Visit&& visit) {
  for (long long t = 1; t <= fact_t_max(f, n); ++t) {
    const long long r = n - 3 * (t + 1);
    const auto [ilo, ihi] = fact_i_range(f, n, r);
    for (long long i = ilo; i <= ihi; i += 2) {
      FactTuple u{n, t, {}};
      u.s.iota = i;
      u.s.mu = (r - i) / 2;
      if (f == Fact::f22a) u.s.tau2 = t + 1;
      if (f == Fact::f22b) u.s.tau1 = t + 1;
      if (f == Fact::f22a || f == Fact::f22b) {
        visit(u);
        continue;
      }
      for (long long t1 = t - 1; t1 <= t + 1; ++t1) {
        const long long rest = t + 1 - t1;
        for (long long a = 0; a <= rest; ++a)
          for (long long b = 0; a + b <= rest; ++b) {
            u.s.tau1 = t1, u.s.tau2 = a, u.s.tau3 = b, u.s.tau4 = rest - a - b;
            visit(u);
          }
      }
    }
  }
}

inline nlohmann::json witness_json(Fact f, const FactTuple& u, const FactCheck& c, bool asserted) {
  nlohmann::json j = {{"fact", to_string(f)}, {"part", c.part}, {"n", u.n}};
  if (!fact_unconditional(f)) j["t"] = u.t;
  j["args"] = to_json(u.s);
  j["lhs"] = to_string(Rational(c.lhs, c.scale));
  j["rhs"] = to_string(Rational(c.rhs, c.scale));
  j["excess"] = to_string(Rational(c.lhs - c.rhs, c.scale));
  j["asserted"] = asserted;
  return j;
}

inline void tally_tuple(Fact f, const FactTuple& u, FactTally& tally, std::size_t max_witnesses) {
  ++tally.tuples;
  const bool asserted = fact_unconditional(f) || u.n >= kFactAssertMinN;
  const std::vector<FactCheck> checks = fact_checks(f, u);
  for (const FactCheck& c : checks) {
    ++tally.checks;
    if (c.holds()) continue;
    ++(asserted ? tally.violations : tally.informational_violations);
    if (tally.witnesses.size() < max_witnesses) tally.witnesses.push_back(witness_json(f, u, c, asserted));
  }
  if (f == Fact::f23 && u.s.tau1 * u.s.tau2 == 0 && checks[0].lhs == checks[0].rhs) ++tally.equalities;
}

inline void merge_tally(FactTally& into, FactTally& part, std::size_t max_witnesses) {
  into.tuples += part.tuples;
  into.checks += part.checks;
  into.violations += part.violations;
  into.informational_violations += part.informational_violations;
  into.equalities += part.equalities;
  for (auto& w : part.witnesses)
    if (into.witnesses.size() < max_witnesses) into.witnesses.push_back(std::move(w));
}

}  // namespace detail

/// Evaluates the selected facts over sampled or all admissible tuples with
/// n in [n_min, n_max]. Results do not depend on the worker count.
inline FactScanReport scan_fact_inequalities(const FactScanOptions& o) {
  require(!o.facts.empty(), "fact scan: no fact selected");
  require(o.workers >= 1, "fact scan: worker count must be at least 1");
  require(o.n_min <= o.n_max, "fact scan: n_min must not exceed n_max");
  require(o.n_max <= kFactScanMaxN, "fact scan: n_max must not exceed 1000000");
  FactScanReport out;
  out.options = o;
  for (std::size_t fi = 0; fi < o.facts.size(); ++fi) {
    const Fact f = o.facts[fi];
    const long long lo = std::max(o.n_min, fact_min_n(f));
    require(lo <= o.n_max, "fact scan: empty admissible set for fact " + to_string(f) + " with n <= " +
                               std::to_string(o.n_max));
    FactTally tally;
    tally.fact = f;
    if (o.exhaustive) {
      require(!fact_unconditional(f), "fact scan: fact 2.3 has unbounded arguments and is sampled only");
      const std::size_t count = static_cast<std::size_t>(o.n_max - lo + 1);
      std::vector<FactTally> parts(count);
      parallel_for(count, o.workers, [&](std::size_t k) {
        detail::enumerate_tuples(f, lo + static_cast<long long>(k),
                                 [&](const FactTuple& u) { detail::tally_tuple(f, u, parts[k], o.max_witnesses); });
      });
      for (FactTally& p : parts) detail::merge_tally(tally, p, o.max_witnesses);
    } else {
      require(o.samples >= 1, "fact scan: sample count must be positive");
      constexpr std::uint64_t kChunk = 4096;
      const std::size_t chunks = static_cast<std::size_t>((o.samples + kChunk - 1) / kChunk);
      std::vector<FactTally> parts(chunks);
      parallel_for(chunks, o.workers, [&](std::size_t c) {
        std::mt19937_64 rng(derive_seed(o.seed, static_cast<std::uint64_t>(f), c));
        for (std::uint64_t k = c * kChunk; k < std::min(o.samples, (c + 1) * kChunk); ++k)
          detail::tally_tuple(f, detail::sample_tuple(f, lo, o.n_max, rng), parts[c], o.max_witnesses);
      });
      for (FactTally& p : parts) detail::merge_tally(tally, p, o.max_witnesses);
    }
    out.tallies.push_back(std::move(tally));
  }
  return out;
}

inline nlohmann::json to_json(const FactScanReport& r) {
  nlohmann::json facts = nlohmann::json::array();
  for (const FactTally& t : r.tallies) {
    nlohmann::json j = {{"fact", to_string(t.fact)},
                        {"tuples", t.tuples},
                        {"checks", t.checks},
                        {"violations", t.violations},
                        {"informational_violations", t.informational_violations},
                        {"witnesses", t.witnesses}};
    if (t.fact == Fact::f23) j["equalities"] = t.equalities;
    facts.push_back(std::move(j));
  }
  nlohmann::json opts = {{"n_min", r.options.n_min},
                         {"n_max", r.options.n_max},
                         {"mode", r.options.exhaustive ? "exhaustive" : "sampled"},
                         {"assert_min_n", kFactAssertMinN}};
  if (!r.options.exhaustive) {
    opts["samples"] = r.options.samples;
    opts["seed"] = r.options.seed;
  }
  return {{"options", opts}, {"violations", r.violations()}, {"facts", facts}};
}

}  // namespace rch
