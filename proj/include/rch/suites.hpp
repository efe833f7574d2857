#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "rch/constructions.hpp"
#include "rch/formulas.hpp"
#include "rch/parallel.hpp"

namespace rch {

// ---------------------------------------------------------------------------
// Shift identities at random admissible points.

struct IdentitySuiteResult {
  int points = 0;  // per identity
  std::uint64_t seed = 0;
  std::vector<int> failures;  // per identity
  std::vector<nlohmann::json> witnesses;

  bool holds() const {
    for (int f : failures)
      if (f) return false;
    return true;
  }
};

/// Arguments uniform in [0, 10^4), shift uniform in [-100, 100]; points whose
/// shift leaves the non-negative orthant are redrawn.
inline IdentitySuiteResult identity_suite(int points = 10'000, std::uint64_t seed = 1) {
  require(points >= 1, "identity suite: point count must be positive");
  IdentitySuiteResult r;
  r.points = points;
  r.seed = seed;
  r.failures.assign(kIdentityCount, 0);
  for (int id = 1; id <= kIdentityCount; ++id) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(id)));
    std::uniform_int_distribution<long long> arg(0, 9'999), shift(-100, 100);
    for (int k = 0; k < points;) {
      const PartitionStats s{arg(rng), arg(rng), arg(rng), arg(rng), arg(rng), arg(rng)};
      const long long x = shift(rng);
      if (!identity_shift(id, s, x).non_negative()) continue;
      ++k;
      const IdentityVerdict v = check_identity(id, s, x);
      if (v.holds) continue;
      ++r.failures[id - 1];
      r.witnesses.push_back({{"identity", id}, {"x", x}, {"lhs", to_string(v.lhs)}, {"rhs", to_string(v.rhs)}});
    }
  }
  return r;
}

inline nlohmann::json to_json(const IdentitySuiteResult& r) {
  nlohmann::json ids = nlohmann::json::array();
  for (int id = 1; id <= kIdentityCount; ++id)
    ids.push_back({{"identity", id}, {"points", r.points}, {"failures", r.failures[id - 1]}});
  return {{"seed", r.seed}, {"holds", r.holds()}, {"identities", ids}, {"witnesses", r.witnesses}};
}

// ---------------------------------------------------------------------------
// Built edge counts against closed forms.

struct FidelityResult {
  long long n_max = 0;
  std::uint64_t checked = 0;
  std::vector<nlohmann::json> mismatches;
};

inline FidelityResult construction_fidelity(long long n_max = 200, int workers = 1) {
  require(n_max >= 1 && n_max <= WideGraph::kCapacity, "fidelity: n must lie in [1, 256]");
  std::vector<FidelityResult> parts(static_cast<std::size_t>(n_max));
  parallel_for(parts.size(), workers, [&](std::size_t k) {
    const long long n = static_cast<long long>(k) + 1;
    for (Family f : kAllFamilies)
      for (long long t = 0; 3 * t <= n; ++t) {
        const ConstructionSpec s{f, n, t};
        if (!is_valid(s)) continue;
        ++parts[k].checked;
        const long built = edge_count(build_construction<4>(s).graph);
        const BigInt closed = closed_form_edge_count(s);
        if (BigInt(built) != closed)
          parts[k].mismatches.push_back(
              {{"family", to_string(f)}, {"n", n}, {"t", t}, {"built", built}, {"closed_form", to_string(closed)}});
      }
  });
  FidelityResult r;
  r.n_max = n_max;
  for (FidelityResult& p : parts) {
    r.checked += p.checked;
    for (auto& m : p.mismatches) r.mismatches.push_back(std::move(m));
  }
  return r;
}

inline nlohmann::json to_json(const FidelityResult& r) {
  return {{"n_max", r.n_max}, {"checked", r.checked}, {"mismatches", r.mismatches}};
}

// ---------------------------------------------------------------------------
// Piecewise Xi against the best built construction.

/// Whether t lies within distance < 2 of some endpoint of the Xi intervals.
inline bool near_xi_boundary(long long n, long long t) {
  for (const IntervalEndpoint& e : xi_endpoints(n))
    if (compare(t - 2, e) < 0 && compare(t + 2, e) > 0) return true;
  return false;
}

struct XiAgreementRow {
  long long n = 0;
  int interior = 0;
  int interior_mismatches = 0;
  int boundary = 0;
  int boundary_discrepancies = 0;
  std::vector<nlohmann::json> details;
};

inline constexpr int kMaxBoundaryDiscrepancies = 2;

struct XiAgreementReport {
  std::vector<XiAgreementRow> rows;

  bool passes() const {
    for (const XiAgreementRow& r : rows)
      if (r.interior_mismatches || r.boundary_discrepancies > kMaxBoundaryDiscrepancies) return false;
    return true;
  }
};

inline XiAgreementReport xi_agreement(long long n_min = 60, long long n_max = 200, int workers = 1) {
  require(n_min >= 3 && n_min <= n_max && n_max <= WideGraph::kCapacity, "xi agreement: need 3 <= n_min <= n_max <= 256");
  XiAgreementReport out;
  out.rows.resize(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(out.rows.size(), workers, [&](std::size_t k) {
    XiAgreementRow& row = out.rows[k];
    row.n = n_min + static_cast<long long>(k);
    for (long long t = 0; 3 * t <= row.n; ++t) {
      const ProblemParams p(row.n, t);
      const bool boundary = near_xi_boundary(row.n, t);
      ++(boundary ? row.boundary : row.interior);
      std::string piecewise;
      try {
        piecewise = to_string(xi_piecewise(p).value);
      } catch (const InputError& e) {
        piecewise = std::string("undefined: ") + e.what();
      }
      const std::string built = std::to_string(xi_from_constructions(p));
      if (piecewise == built) continue;
      ++(boundary ? row.boundary_discrepancies : row.interior_mismatches);
      row.details.push_back(
          {{"n", row.n}, {"t", t}, {"boundary", boundary}, {"piecewise", piecewise}, {"constructions", built}});
    }
  });
  return out;
}

inline nlohmann::json to_json(const XiAgreementReport& r) {
  nlohmann::json rows = nlohmann::json::array(), details = nlohmann::json::array();
  int interior = 0, boundary = 0, mismatches = 0, discrepancies = 0, worst = 0;
  for (const XiAgreementRow& row : r.rows) {
    interior += row.interior;
    boundary += row.boundary;
    mismatches += row.interior_mismatches;
    discrepancies += row.boundary_discrepancies;
    worst = std::max(worst, row.boundary_discrepancies);
    for (const auto& d : row.details) details.push_back(d);
  }
  return {{"passes", r.passes()},
          {"interior_points", interior},
          {"interior_mismatches", mismatches},
          {"boundary_points", boundary},
          {"boundary_discrepancies", discrepancies},
          {"max_boundary_discrepancies_per_n", worst},
          {"details", details}};
}

}  // namespace rch
