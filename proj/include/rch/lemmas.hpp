#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rch/coloring.hpp"
#include "rch/formulas.hpp"
#include "rch/graph_io.hpp"
#include "rch/rainbow.hpp"
#include "rch/tiling.hpp"

namespace rch {

/// One checked inequality. `asserted` marks a theorem-strength statement;
/// a report counts as a violation only when it is asserted, its guard holds
/// and the inequality fails. Everything else is a measurement.
struct LemmaReport {
  std::string id;
  std::string description;
  std::uint64_t graph_hash = 0;
  PartitionStats stats;
  Rational lhs;
  Rational rhs;
  bool holds = true;
  bool guard_satisfied = true;
  bool asserted = true;
  std::string note;

  bool violated() const { return asserted && guard_satisfied && !holds; }
  /// What the scanner compares across peeling orders.
  bool verdict() const { return !guard_satisfied || holds; }
};

inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_graph6(g)) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

inline nlohmann::json to_json(const PartitionStats& s) {
  return {{"t1", s.tau1}, {"t2", s.tau2}, {"t3", s.tau3}, {"t4", s.tau4}, {"m", s.mu}, {"i", s.iota}};
}

inline nlohmann::json to_json(const LemmaReport& r) {
  nlohmann::json j = {{"id", r.id},
                      {"description", r.description},
                      {"graph_hash", r.graph_hash},
                      {"stats", to_json(r.stats)},
                      {"lhs", to_string(r.lhs)},
                      {"rhs", to_string(r.rhs)},
                      {"holds", r.holds},
                      {"guard_satisfied", r.guard_satisfied},
                      {"asserted", r.asserted}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline nlohmann::json to_json(const std::vector<LemmaReport>& rs) {
  nlohmann::json out = nlohmann::json::array();
  for (const LemmaReport& r : rs) out.push_back(to_json(r));
  return out;
}

namespace detail {

inline long long c2(long long k) { return k * (k - 1) / 2; }

struct ReportSink {
  std::uint64_t hash;
  PartitionStats stats;
  std::vector<LemmaReport> out;

  LemmaReport& le(std::string id, std::string desc, Rational lhs, Rational rhs, bool guard = true, bool asserted = true) {
    LemmaReport r;
    r.id = std::move(id);
    r.description = std::move(desc);
    r.graph_hash = hash;
    r.stats = stats;
    r.holds = lhs <= rhs;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.guard_satisfied = guard;
    r.asserted = asserted;
    out.push_back(std::move(r));
    return out.back();
  }

  LemmaReport& ge(std::string id, std::string desc, Rational lhs, Rational rhs, bool guard = true, bool asserted = true) {
    const bool holds = lhs >= rhs;
    LemmaReport& r = le(std::move(id), std::move(desc), std::move(lhs), std::move(rhs), guard, asserted);
    r.holds = holds;
    return r;
  }
};

}  // namespace detail

/// Everything the structural checks need about one graph.
struct Decomposition {
  TilingTriple triple;
  IdealPartition partition;
  PartitionStats stats;
  PartEdgeProfile profile;
};

inline Decomposition decompose(const Graph& g, const TilingTriple& triple,
                               std::optional<std::uint64_t> peel_seed = std::nullopt,
                               T2Rule rule = T2Rule::singletons) {
  Decomposition d;
  d.triple = triple;
  d.partition = ideal_partition(g, triple, peel_seed, rule);
  d.stats = partition_stats(d.partition, triple);
  d.profile = part_edge_profile(g, triple, d.partition);
  return d;
}

inline constexpr const char* kA1fNote =
    "printed as e(I,T1) <= 7binom(t1,2); checked as e(T1) <= 7binom(t1,2)+3t1, the term it feeds in f";

/// Edge bounds between and inside the parts of a maximal triple.
inline std::vector<LemmaReport> check_appendix_bounds(const Graph& g, const Decomposition& d) {
  const auto& e = d.profile.e;
  const PartitionStats& s = d.stats;
  const long long t1 = s.tau1, t2 = s.tau2, t3 = s.tau3, t4 = s.tau4, m = s.mu, i = s.iota;
  const long long tj[4] = {t1, t2, t3, t4};
  detail::ReportSink k{graph_hash(g), s, {}};
  using detail::c2;

  k.le("A.1(a)", "e(I) = 0", e[kI][kI], 0);
  k.le("A.1(b)", "e(I,M) <= im", e[kI][kM], i * m);
  k.le("A.1(c)", "e(M) <= m^2", e[kM][kM], m * m);
  k.le("A.1(d)", "e(M,T1) <= 4mt1", e[kM][kT1], 4 * m * t1);
  k.le("A.1(e)", "e(I,T1) <= 2it1", e[kI][kT1], 2 * i * t1);
  k.le("A.1(f)", "e(T1) <= 7binom(t1,2)+3t1", e[kT1][kT1], 7 * c2(t1) + 3 * t1).note = kA1fNote;
  k.le("A.1(g)", "e(I,T2) <= 2it2", e[kI][kT2], 2 * i * t2);
  k.le("A.1(h)", "e(T2) <= 8binom(t2,2)+3t2", e[kT2][kT2], 8 * c2(t2) + 3 * t2);
  k.le("A.1(i)", "e(T3)+e(T3,T4) <= 8binom(t3,2)+8t3t4+3t3", e[kT3][kT3] + e[kT3][kT4],
       8 * c2(t3) + 8 * t3 * t4 + 3 * t3);

  for (int j = kT2; j <= kT4; ++j)
    k.le("A.2(a) j=" + std::to_string(j + 1), "t1 != 1: e(T1,Tj) <= 7t1tj", e[kT1][j], 7 * t1 * tj[j], t1 != 1);
  for (int j = kT3; j <= kT4; ++j)
    k.le("A.2(b) j=" + std::to_string(j + 1), "t2 != 1: e(T2,Tj) <= 8t2tj", e[kT2][j], 8 * t2 * tj[j], t2 != 1);

  k.le("A.3(a)", "e(T1,T2)+e(M,T2) <= 7t1t2+(2+3m)t2, or 0 if m = 0", e[kT1][kT2] + e[kM][kT2],
       m >= 1 ? 7 * t1 * t2 + (2 + 3 * m) * t2 : 0);
  for (int j = kT3; j <= kT4; ++j)
    k.le("A.3(b) j=" + std::to_string(j + 1), "e(T1,Tj)+e(M,Tj) <= 7t1tj+(3+3m)tj, or 0 if m = 0",
         e[kT1][j] + e[kM][j], m >= 1 ? 7 * t1 * tj[j] + (3 + 3 * m) * tj[j] : 0);
  for (int j = kT3; j <= kT4; ++j)
    k.le("A.3(c) j=" + std::to_string(j + 1), "e(T2,Tj)+e(I,Tj) <= 8t2tj+(2+i)tj, or 0 if i = 0",
         e[kT2][j] + e[kI][j], i >= 1 ? 8 * t2 * tj[j] + (2 + i) * tj[j] : 0);

  // Single-triangle refinements when t2 = 1.
  const VertexSet t1v = IdealPartition::vertices_of(d.partition.t1), t2v = IdealPartition::vertices_of(d.partition.t2);
  const VertexSet iv = d.triple.singleton_set();
  long worst_full = 0, worst_sparse = 0;
  bool any_full = false, any_sparse = false;
  for (const auto* cls : {&d.partition.t3, &d.partition.t4})
    for (const Triangle& tr : *cls) {
      const long to_i = edges_between(g, tr.vertices(), iv);
      if (edges_between(g, tr.vertices(), t2v) == 9) {
        any_full = true;
        worst_full = std::max(worst_full, to_i);
      }
      if (edges_between(g, tr.vertices(), t1v) <= 8) {
        any_sparse = true;
        worst_sparse = std::max(worst_sparse, to_i);
      }
    }
  k.le("A.3(c) t2=1 full", "t2 = 1, T in T3 u T4, e(T2,T) = 9: e(I,T) <= i", worst_full, i, t2 == 1 && any_full);
  k.le("A.3(c) t2=1 sparse", "t2 = 1, T in T3 u T4, e(T1,T) <= 8: e(I,T) <= i+2", worst_sparse, i + 2,
       t2 == 1 && any_sparse, false);
  return std::move(k.out);
}

/// Whole-graph bounds by h and g. The 2.5(ii)/(iii) records carry an
/// unspecified linear slack and are measurements only.
inline std::vector<LemmaReport> check_global_bounds(const Graph& g, const Decomposition& d) {
  const PartitionStats& s = d.stats;
  const long long n = g.order(), t = s.triangles(), three_t4 = 3 * s.tau4, mi = 2 * s.mu + s.iota;
  const long edges = edge_count(g);
  const long e4 = d.profile.e[kT4][kT4];
  const long long thr = t4_sparse_threshold(s.tau4);
  detail::ReportSink k{graph_hash(g), s, {}};

  k.le("2.1", "|H| <= h", edges, Rational(poly_h(s)));
  k.le("2.4", "e(T4) <= 8binom(t4,2)+10t4-28: |H| <= g", edges, Rational(poly_g(s)), e4 <= thr);
  const bool dense = e4 >= thr + 1;
  k.le("2.5(i)", "e(T4) dense, 3t4 < 2m+i: |H| <= h", edges, Rational(poly_h(s)), dense && three_t4 < mi);
  k.le("2.5(ii)", "e(T4) dense, 3t4 = 2m+i, 9t <= 2n-24: |H| <= e1 - n^2/2000 + O(n)", edges,
       Rational(e1_value(n, t)) - Rational(n * n, 2000), dense && three_t4 == mi && 9 * t <= 2 * n - 24, false)
      .note = "linear slack unspecified; compared without it";
  k.le("2.5(iii)", "e(T4) dense, 3t4 > 2m+i, n/5 <= t <= 3n/10: |H| <= binom(2t+1,2)+(2t+1)(n-2t-1) - n^2/100 + O(n)",
       edges, Rational(binom2(BigInt(2 * t + 1)) + BigInt(2 * t + 1) * (n - 2 * t - 1)) - Rational(n * n, 100),
       dense && three_t4 > mi && 5 * t >= n && 10 * t <= 3 * n, false)
      .note = "linear slack unspecified; compared without it";
  return std::move(k.out);
}

/// Triangle-free graphs with minimum degree above 2n/5 are bipartite.
inline LemmaReport check_aes(const Graph& g) {
  LemmaReport r;
  r.id = "AES";
  r.description = "triangle-free and 5*delta > 2n: bipartite";
  r.graph_hash = graph_hash(g);
  const int n = g.order();
  const int delta = n == 0 ? 0 : min_degree(g);
  r.lhs = delta;
  r.rhs = Rational(2 * n, 5);
  r.guard_satisfied = n > 0 && !has_triangle(g, g.vertices()) && 5 * delta > 2 * n;
  r.holds = is_bipartite(g);
  return r;
}

// ---------------------------------------------------------------------------
// Stability windows.

struct WindowPredicate {
  bool holds = false;
  bool at_boundary = false;
};

struct StabilityRecord {
  bool precondition_met = false;
  std::string precondition_note;
  long long n = 0, t = 0;
  PartitionStats stats;
  WindowPredicate t1_window, m_window, i_window;
  bool all_hold() const { return t1_window.holds && m_window.holds && i_window.holds; }
};

/// t1 in [t-1, t+1]; (n-3(t+1))/2 - sqrt(2n)/2 < m <= (n-3(t+1))/2;
/// i < sqrt(2n). Compared exactly via squares.
inline StabilityRecord stability_windows(long long n, long long t, const PartitionStats& s) {
  StabilityRecord r;
  r.n = n;
  r.t = t;
  r.stats = s;
  r.t1_window = {s.tau1 >= t - 1 && s.tau1 <= t + 1, s.tau1 == t - 1 || s.tau1 == t + 1};
  const long long d = n - 3 * (t + 1) - 2 * s.mu;
  r.m_window = {d >= 0 && d * d < 2 * n, d == 0 || d * d == 2 * n};
  r.i_window = {s.iota * s.iota < 2 * n, s.iota * s.iota == 2 * n};
  return r;
}

/// Diagnostic only: the windows hold for large n, not at desk scale.
inline StabilityRecord check_stability_predicates(const Graph& g, long long t,
                                                  std::uint64_t node_budget = kDefaultNodeBudget) {
  const long long n = g.order();
  StabilityRecord r;
  r.n = n;
  r.t = t;
  const ProblemParams p(n, t);
  const BigInt want = ex_abhp(p).value + 2;
  if (BigInt(edge_count(g)) != want) {
    r.precondition_note = "edge count " + std::to_string(edge_count(g)) + " != ex_abhp(n,t)+2 = " + want.str();
    return r;
  }
  TripleResult tr = maximal_tiling_triple(g, node_budget);
  if (tr.status != SearchStatus::complete) {
    r.precondition_note = "tiling search exhausted its budget";
    return r;
  }
  if (static_cast<long long>(tr.triple.triangles.size()) > t + 1) {
    r.precondition_note = "graph contains (t+2) disjoint triangles";
    return r;
  }
  StabilityRecord w = stability_windows(n, t, decompose(g, tr.triple).stats);
  w.precondition_met = true;
  return w;
}

inline nlohmann::json to_json(const WindowPredicate& w) { return {{"holds", w.holds}, {"at_boundary", w.at_boundary}}; }

inline nlohmann::json to_json(const StabilityRecord& r) {
  return {{"n", r.n},
          {"t", r.t},
          {"precondition_met", r.precondition_met},
          {"precondition_note", r.precondition_note},
          {"stats", to_json(r.stats)},
          {"t1_window", to_json(r.t1_window)},
          {"m_window", to_json(r.m_window)},
          {"i_window", to_json(r.i_window)}};
}

// ---------------------------------------------------------------------------
// Claims about the representative graph of a rainbow-free coloring.

struct RepresentativeCheck {
  SearchStatus precondition = SearchStatus::indeterminate;  // complete = no rainbow (t+2)K3 proved
  bool rainbow_found = false;
  Graph graph{0};
  Decomposition decomposition;
  std::vector<LemmaReport> reports;

  bool precondition_met() const { return precondition == SearchStatus::complete && !rainbow_found; }
};

inline std::vector<LemmaReport> representative_claims(const Graph& h, const Decomposition& d, bool assert_claims) {
  const IdealPartition& p = d.partition;
  const std::vector<Edge>& mt = d.triple.matching;
  const long long n = h.order(), m = d.stats.mu, t1 = d.stats.tau1;
  detail::ReportSink k{graph_hash(h), d.stats, {}};

  long c4_pairs = 0;
  for (std::size_t a = 0; a < mt.size(); ++a)
    for (std::size_t b = a + 1; b < mt.size(); ++b) {
      const auto [u1, v1] = mt[a];
      const auto [u2, v2] = mt[b];
      if ((h.adjacent(u1, u2) && h.adjacent(v1, v2)) || (h.adjacent(u1, v2) && h.adjacent(v1, u2))) ++c4_pairs;
    }
  k.ge("4.1", "two M-edges span a 4-cycle", c4_pairs, 1, m >= 2, false);

  long mixed = 0, few_seers = 0;
  for (const Triangle& tr : p.t1) {
    VertexSet seen;
    long seers = 0;
    for (const Edge& e : mt)
      if (auto w = edge_sees(h, e, tr)) {
        seen |= w->seen_vertices;
        ++seers;
      }
    if (seen.size() != 1) ++mixed;
    if (1000 * seers < n) ++few_seers;
  }
  k.le("4.2", "M-edges seeing a T1 triangle all see only its critical vertex", mixed, 0, t1 >= 1, assert_claims);

  long worst = 0;
  for (std::size_t a = 0; a < p.t1.size(); ++a)
    for (std::size_t b = 0; b < p.t1.size(); ++b) {
      if (a == b) continue;
      const VertexSet other = p.t1[b].vertices();
      for (int y : p.t1[a].vertices())
        if (y != p.critical[a]) worst = std::max<long>(worst, (h.neighbors(y) & other).size());
    }
  k.le("4.3", "non-critical vertex of a T1 triangle sends <= 2 edges to another T1 triangle", worst, 2, t1 >= 2,
       assert_claims);
  k.le("4.4", "at most two T1 triangles seen by fewer than n/1000 M-edges", few_seers, 2, t1 >= 1, false);

  const VertexSet hp = p.v_prime | d.triple.matching_vertices();
  long hp_triangles = 0;
  for (const Triangle& tr : enumerate_triangles(h))
    if (tr.vertices().is_subset_of(hp)) ++hp_triangles;
  k.le("4.5", "H' = H[V' u V(M)] is triangle-free", hp_triangles, 0, !hp.empty(), assert_claims);
  const bool bip = bipartition(h, hp).has_value();
  k.le("4.6", "H' is bipartite", bip ? 0 : 1, 0, !hp.empty(), false);

  long best = -1;
  const VertexSet t1v = IdealPartition::vertices_of(p.t1), mv = d.triple.matching_vertices();
  for (const Triangle& tr : p.t1) {
    const VertexSet rest = t1v - tr.vertices();
    best = std::max(best, edges_within(h, rest) + edges_between(h, rest, mv) + edges_within(h, mv));
  }
  const long long need = 7 * detail::c2(t1 - 1) + 3 * (t1 - 1) + m * m + 4 * m * (t1 - 1) - 9;
  k.ge("4.7", "max over xyz in T1: e(T1-xyz)+e(T1-xyz,M)+e(M) >= 7binom(t1-1,2)+3(t1-1)+m^2+4m(t1-1)-9", best, need,
       t1 >= 1, false);
  return std::move(k.out);
}

/// Builds the representative graph, its maximal triple and ideal partition,
/// and checks the claims. Claims are assertions only when the coloring was
/// proved free of a rainbow (t+2)K3.
inline RepresentativeCheck check_representative_claims(const EdgeColoring& c, int t,
                                                       std::uint64_t node_budget = kDefaultNodeBudget) {
  RepresentativeCheck out;
  const int s = t + 2;
  if (3 * s <= c.order()) {
    RainbowSearchResult r = find_rainbow_tiling(c, s, node_budget);
    out.precondition = r.status;
    out.rainbow_found = r.found();
  } else {
    out.precondition = SearchStatus::complete;
  }
  out.graph = representative_graph(c);
  TripleResult tr = maximal_tiling_triple(out.graph, node_budget);
  require(tr.status == SearchStatus::complete, "representative claims: tiling search exhausted its budget");
  out.decomposition = decompose(out.graph, tr.triple);
  out.reports = representative_claims(out.graph, out.decomposition, out.precondition_met());
  return out;
}

// ---------------------------------------------------------------------------
// Complete tripartite subgraphs.

struct Tripartite {
  VertexSet a, b, c;
};

namespace detail {

/// Disjoint B, C inside `pool`, |B| = nb, |C| = nc, complete between them.
class BicliqueSearch {
 public:
  BicliqueSearch(const Graph& g, int nb, int nc, NodeBudget& budget) : g_(g), nb_(nb), nc_(nc), budget_(budget) {}

  std::optional<std::pair<VertexSet, VertexSet>> run(const VertexSet& pool) {
    found_.reset();
    grow(VertexSet{}, pool, pool);
    return found_;
  }

 private:
  // `common` is the common neighbourhood of b inside the pool, so it never meets b
  bool grow(const VertexSet& b, VertexSet cand, const VertexSet& common) {
    if (!budget_.spend()) return true;
    if (b.size() == nb_) {
      VertexSet c;
      for (int v : common) {
        if (c.size() == nc_) break;
        c.insert(v);
      }
      found_ = std::make_pair(b, c);
      return true;
    }
    while (b.size() + cand.size() >= nb_) {
      const int v = cand.first();
      cand.erase(v);
      const VertexSet next = common & g_.neighbors(v);
      if (next.size() < nc_) continue;
      VertexSet nb = b;
      nb.insert(v);
      if (grow(nb, cand, next)) return true;
    }
    return false;
  }

  const Graph& g_;
  int nb_, nc_;
  NodeBudget& budget_;
  std::optional<std::pair<VertexSet, VertexSet>> found_;
};

}  // namespace detail

struct TripartiteResult {
  std::optional<Tripartite> witness;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;
};

/// Looks for K_{na,nb,nc} with its first part inside `a_pool` and the other
/// two inside `bc_pool` (the pools must be disjoint).
inline TripartiteResult find_complete_tripartite(const Graph& g, const VertexSet& a_pool, const VertexSet& bc_pool,
                                                 int na, int nb, int nc,
                                                 std::uint64_t node_budget = kDefaultNodeBudget) {
  require(!a_pool.intersects(bc_pool), "tripartite: pools must be disjoint");
  require(na >= 1 && nb >= 1 && nc >= 1, "tripartite: part sizes must be positive");
  NodeBudget budget(node_budget);
  TripartiteResult out;
  detail::BicliqueSearch bc(g, nb, nc, budget);
  // peel A-candidates with too few neighbours in bc_pool
  VertexSet acand;
  for (int v : a_pool)
    if ((g.neighbors(v) & bc_pool).size() >= nb + nc) acand.insert(v);
  std::vector<int> chosen;
  std::function<bool(VertexSet, VertexSet)> pick = [&](VertexSet cand, VertexSet common) -> bool {
    if (!budget.spend()) return true;
    if (static_cast<int>(chosen.size()) == na) {
      auto r = bc.run(common);
      if (!r) return false;
      Tripartite w;
      for (int v : chosen) w.a.insert(v);
      w.b = r->first;
      w.c = r->second;
      out.witness = w;
      return true;
    }
    while (static_cast<int>(chosen.size()) + cand.size() >= na) {
      const int v = cand.first();
      cand.erase(v);
      const VertexSet next = common & g.neighbors(v);
      if (next.size() < nb + nc) continue;
      chosen.push_back(v);
      if (pick(cand, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  pick(acand, bc_pool);
  out.status = out.witness ? SearchStatus::complete : budget.status();
  out.nodes = budget.used();
  return out;
}

struct TripartiteRecord {
  bool vacuous = false;  // t1 <= 10: the stated parts would be empty
  bool windows_hold = false;
  int na = 0, nbc = 0;
  TripartiteResult search;
  std::string note;

  bool found() const { return search.witness.has_value(); }
};

/// Looks for K_{t1-10, m+t1-10, m+t1-10} with the small part among the
/// critical vertices and the two large parts in H' = H[V' u V(M)].
inline TripartiteRecord check_tripartite(const Graph& h, const Decomposition& d, long long t,
                                         std::uint64_t node_budget = kDefaultNodeBudget) {
  TripartiteRecord r;
  r.windows_hold = stability_windows(h.order(), t, d.stats).all_hold();
  const long long t1 = d.stats.tau1, m = d.stats.mu;
  if (t1 <= 10) {
    r.vacuous = true;
    r.note = "t1 <= 10, the first part would be empty";
    return r;
  }
  r.na = static_cast<int>(t1 - 10);
  r.nbc = static_cast<int>(m + t1 - 10);
  r.search = find_complete_tripartite(h, d.partition.v_dprime, d.partition.v_prime | d.triple.matching_vertices(), r.na,
                                      r.nbc, r.nbc, node_budget);
  return r;
}

inline TripartiteRecord check_tripartite_theorem(const EdgeColoring& c, int t,
                                                 std::uint64_t node_budget = kDefaultNodeBudget) {
  const Graph h = representative_graph(c);
  TripleResult tr = maximal_tiling_triple(h, node_budget);
  require(tr.status == SearchStatus::complete, "tripartite: tiling search exhausted its budget");
  return check_tripartite(h, decompose(h, tr.triple), t, node_budget);
}

inline nlohmann::json to_json(const TripartiteRecord& r) {
  nlohmann::json j = {{"vacuous", r.vacuous},         {"windows_hold", r.windows_hold}, {"sizes", {r.na, r.nbc, r.nbc}},
                      {"status", to_string(r.search.status)}, {"found", r.found()},  {"nodes", r.search.nodes}};
  if (r.search.witness)
    j["witness"] = {r.search.witness->a.to_vector(), r.search.witness->b.to_vector(), r.search.witness->c.to_vector()};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace rch
