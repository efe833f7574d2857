#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "json.hpp"
#include "rch/formulas.hpp"
#include "rch/graph.hpp"

namespace rch {

namespace detail {

// Vertices of `within` lying on a triangle of g[within].
inline VertexSet triangle_vertices(const Graph& g, const VertexSet& within) {
  VertexSet out;
  for (int v : within) {
    if (out.contains(v)) continue;
    VertexSet nv = g.neighbors(v) & within;
    for (int u : nv) {
      VertexSet common = g.neighbors(u) & nv;
      if (!common.empty()) {
        out.insert(v);
        out.insert(u);
        out |= common;
        break;
      }
    }
  }
  return out;
}

// Triangles of g[within], lexicographic.
inline std::vector<Triangle> triangles_within(const Graph& g, const VertexSet& within) {
  std::vector<Triangle> out;
  for (int a : within) {
    VertexSet up = (g.neighbors(a) & within) - VertexSet::range(a + 1);
    for (int b : up)
      for (int c : (up & g.neighbors(b)) - VertexSet::range(b + 1)) out.emplace_back(a, b, c);
  }
  return out;
}

// Upper bound on the number of disjoint members of `tris` (all inside a
// vertex set of size core_size). Three bounds, smallest wins:
//   core_size / 3;
//   a greedy hitting set, since each packed triangle owns a hitter;
//   half a greedy set meeting every triangle twice.
inline int packing_bound(const std::vector<Triangle>& tris, int core_size) {
  if (tris.empty()) return 0;
  int bound = core_size / 3;
  std::array<int, kMaxVertices> cnt{};
  auto argmax = [&] {
    int best = 0;
    for (int v = 1; v < kMaxVertices; ++v)
      if (cnt[v] > cnt[best]) best = v;
    return best;
  };

  std::vector<char> alive(tris.size(), 1);
  std::size_t left = tris.size();
  int hit = 0;
  while (left > 0 && hit < bound) {
    cnt.fill(0);
    for (std::size_t k = 0; k < tris.size(); ++k)
      if (alive[k]) ++cnt[tris[k].a], ++cnt[tris[k].b], ++cnt[tris[k].c];
    const int v = argmax();
    for (std::size_t k = 0; k < tris.size(); ++k)
      if (alive[k] && tris[k].vertices().contains(v)) alive[k] = 0, --left;
    ++hit;
  }
  if (left == 0) bound = std::min(bound, hit);

  std::vector<char> deficit(tris.size(), 2);
  VertexSet chosen;
  left = tris.size();
  while (left > 0 && chosen.size() / 2 < bound) {
    cnt.fill(0);
    for (std::size_t k = 0; k < tris.size(); ++k) {
      if (deficit[k] == 0) continue;
      for (int v : tris[k].vertices_array())
        if (!chosen.contains(v)) ++cnt[v];
    }
    const int v = argmax();
    chosen.insert(v);
    for (std::size_t k = 0; k < tris.size(); ++k)
      if (deficit[k] > 0 && tris[k].vertices().contains(v) && --deficit[k] == 0) --left;
  }
  if (left == 0) bound = std::min(bound, chosen.size() / 2);
  return bound;
}

inline int packing_upper_bound(const Graph& g, const VertexSet& core) {
  return packing_bound(triangles_within(g, core), core.size());
}

}  // namespace detail

struct TilingResult {
  int size = 0;
  std::vector<Triangle> triangles;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;
};

namespace detail {

class PackingSearch {
 public:
  PackingSearch(const Graph& g, NodeBudget& budget, int stop_at) : g_(g), budget_(budget), stop_(stop_at) {}

  void run(VertexSet avail) {
    if (!budget_.spend()) return;
    const int have = static_cast<int>(cur_.size());
    if (have > best_) {
      best_ = have;
      best_tiling_ = cur_;
    }
    if (best_ >= stop_) return;
    avail = triangle_vertices(g_, avail);
    if (avail.empty()) return;
    if (have + packing_upper_bound(g_, avail) <= best_) return;

    const int v = avail.first();
    const VertexSet nv = g_.neighbors(v) & avail;
    for (int a : nv) {
      for (int b : (g_.neighbors(a) & nv) - VertexSet::range(a + 1)) {
        cur_.emplace_back(v, a, b);
        run(avail - VertexSet{v, a, b});
        cur_.pop_back();
        if (best_ >= stop_ || budget_.exhausted()) return;
      }
    }
    avail.erase(v);
    run(avail);
  }

  int best() const { return best_; }
  const std::vector<Triangle>& best_tiling() const { return best_tiling_; }

 private:
  const Graph& g_;
  NodeBudget& budget_;
  int stop_;
  int best_ = 0;
  std::vector<Triangle> cur_, best_tiling_;
};

}  // namespace detail

/// Maximum number of vertex-disjoint triangles, with a witness tiling.
inline TilingResult max_tiling_number(const Graph& g, std::uint64_t node_budget = kDefaultNodeBudget) {
  NodeBudget budget(node_budget);
  const VertexSet core = detail::triangle_vertices(g, g.vertices());
  detail::PackingSearch search(g, budget, detail::packing_upper_bound(g, core));
  search.run(core);
  TilingResult r;
  r.size = search.best();
  r.triangles = search.best_tiling();
  r.status = budget.status();
  r.nodes = budget.used();
  return r;
}

/// First-witness mode on g[within]: stops as soon as s disjoint triangles
/// are found. `size` is s on success; otherwise the best size seen.
inline TilingResult find_tiling(const Graph& g, const VertexSet& within, int s, NodeBudget& budget) {
  const std::uint64_t before = budget.used();
  detail::PackingSearch search(g, budget, s);
  search.run(within);
  TilingResult r;
  r.size = search.best();
  r.triangles = search.best_tiling();
  r.status = search.best() >= s ? SearchStatus::complete : budget.status();
  r.nodes = budget.used() - before;
  return r;
}

inline TilingResult find_tiling(const Graph& g, int s, std::uint64_t node_budget = kDefaultNodeBudget) {
  NodeBudget budget(node_budget);
  return find_tiling(g, g.vertices(), s, budget);
}

/// Maximum matching of g[within] (Edmonds), edges in canonical order.
inline std::vector<Edge> maximum_matching(const Graph& g, const VertexSet& within) {
  using UG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  const std::vector<int> ids = within.to_vector();
  const int k = static_cast<int>(ids.size());
  UG bg(k);
  bool any = false;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.adjacent(ids[i], ids[j])) {
        boost::add_edge(i, j, bg);
        any = true;
      }
  std::vector<Edge> out;
  if (!any) return out;
  std::vector<boost::graph_traits<UG>::vertex_descriptor> mate(k);
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  for (int i = 0; i < k; ++i) {
    auto m = mate[i];
    if (m != boost::graph_traits<UG>::null_vertex() && static_cast<int>(m) > i) out.emplace_back(ids[i], ids[m]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct TilingTriple {
  std::vector<Triangle> triangles;
  std::vector<Edge> matching;
  std::vector<int> singletons;

  VertexSet triangle_vertices() const {
    VertexSet s;
    for (const Triangle& t : triangles) s |= t.vertices();
    return s;
  }
  VertexSet matching_vertices() const {
    VertexSet s;
    for (const Edge& e : matching) s |= e.vertices();
    return s;
  }
  VertexSet singleton_set() const {
    VertexSet s;
    for (int v : singletons) s.insert(v);
    return s;
  }
};

/// Throws InputError unless `t` partitions V(g) into triangles, edges and
/// singletons of g.
inline void validate_triple(const Graph& g, const TilingTriple& t) {
  VertexSet seen;
  auto claim = [&](int v) {
    require(v >= 0 && v < g.order(), "triple: vertex out of range");
    require(!seen.contains(v), "triple: vertex used twice");
    seen.insert(v);
  };
  for (const Triangle& tri : t.triangles) {
    require(is_triangle(g, tri), "triple: listed triple is not a triangle");
    for (int v : tri.vertices_array()) claim(v);
  }
  for (const Edge& e : t.matching) {
    require(e.u != e.v && g.adjacent(e.u, e.v), "triple: listed pair is not an edge");
    claim(e.u);
    claim(e.v);
  }
  for (int v : t.singletons) claim(v);
  require(seen == g.vertices(), "triple: vertices not covered");
}

struct TripleResult {
  TilingTriple triple;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;
};

namespace detail {

class TripleSearch {
 public:
  TripleSearch(const Graph& g, NodeBudget& budget, int tau) : g_(g), budget_(budget), tau_(tau) {
    matching_cap_ = (g.order() - 3 * tau) / 2;
  }

  // `skipped` holds vertices ruled out of the tiling; they stay in the
  // remainder that the matching is taken from.
  void run(VertexSet avail, VertexSet skipped) {
    if (done_ || !budget_.spend()) return;
    const int need = tau_ - static_cast<int>(cur_.size());
    if (need == 0) {
      leaf(avail | skipped);
      return;
    }
    if (avail.size() < 3 * need) return;
    const VertexSet core = triangle_vertices(g_, avail);
    if (core.size() < 3 * need || packing_upper_bound(g_, core) < need) return;

    const int v = avail.first();
    const VertexSet nv = g_.neighbors(v) & avail;
    for (int a : nv) {
      for (int b : (g_.neighbors(a) & nv) - VertexSet::range(a + 1)) {
        cur_.emplace_back(v, a, b);
        run(avail - VertexSet{v, a, b}, skipped);
        cur_.pop_back();
        if (done_ || budget_.exhausted()) return;
      }
    }
    avail.erase(v);
    skipped.insert(v);
    run(avail, skipped);
  }

  bool found() const { return found_; }
  const std::vector<Triangle>& tiling() const { return best_tiling_; }
  const std::vector<Edge>& matching() const { return best_matching_; }

 private:
  void leaf(const VertexSet& rest) {
    int nonisolated = 0;
    for (int v : rest)
      if (g_.neighbors(v).intersects(rest)) ++nonisolated;
    if (found_ && nonisolated / 2 <= static_cast<int>(best_matching_.size())) return;
    std::vector<Edge> m = maximum_matching(g_, rest);
    if (!found_ || m.size() > best_matching_.size()) {
      found_ = true;
      best_tiling_ = cur_;
      best_matching_ = std::move(m);
      if (static_cast<int>(best_matching_.size()) >= matching_cap_) done_ = true;
    }
  }

  const Graph& g_;
  NodeBudget& budget_;
  int tau_;
  int matching_cap_ = 0;
  bool found_ = false;
  bool done_ = false;
  std::vector<Triangle> cur_, best_tiling_;
  std::vector<Edge> best_matching_;
};

}  // namespace detail

/// Tiling triple maximal in (|𝒯|, |ℳ|): a maximum tiling whose remainder
/// has the largest matching over all maximum tilings.
inline TripleResult maximal_tiling_triple(const Graph& g, std::uint64_t node_budget = kDefaultNodeBudget) {
  TilingResult tiling = max_tiling_number(g, node_budget);
  TripleResult r;
  r.nodes = tiling.nodes;
  if (tiling.status == SearchStatus::indeterminate) {
    r.status = SearchStatus::indeterminate;
    return r;
  }
  NodeBudget budget(node_budget);
  detail::TripleSearch search(g, budget, tiling.size);
  search.run(g.vertices(), VertexSet{});
  r.nodes += budget.used();
  r.status = budget.status();
  if (!search.found()) {
    r.status = SearchStatus::indeterminate;
    return r;
  }
  r.triple.triangles = search.tiling();
  std::sort(r.triple.triangles.begin(), r.triple.triangles.end());
  r.triple.matching = search.matching();
  const VertexSet rest = g.vertices() - r.triple.triangle_vertices() - r.triple.matching_vertices();
  r.triple.singletons = rest.to_vector();
  return r;
}

// ---------------------------------------------------------------------------
// Sees relations.

struct SeesWitness {
  enum class Kind { edge, vertex };
  Kind kind = Kind::edge;
  Edge seer_edge;
  int seer_vertex = -1;
  Triangle seen;
  VertexSet seen_vertices;
};

/// uv sees xyz through every triangle vertex adjacent to both u and v.
inline std::optional<SeesWitness> edge_sees(const Graph& g, const Edge& e, const Triangle& tri) {
  require(!e.vertices().intersects(tri.vertices()), "edge_sees: edge and triangle must be disjoint");
  VertexSet seen = tri.vertices() & g.neighbors(e.u) & g.neighbors(e.v);
  if (seen.empty()) return std::nullopt;
  return SeesWitness{SeesWitness::Kind::edge, e, -1, tri, seen};
}

/// w sees xyz when adjacent to at least two of its vertices.
inline std::optional<SeesWitness> vertex_sees(const Graph& g, int w, const Triangle& tri) {
  require(!tri.vertices().contains(w), "vertex_sees: vertex lies on the triangle");
  VertexSet seen = tri.vertices() & g.neighbors(w);
  if (seen.size() < 2) return std::nullopt;
  return SeesWitness{SeesWitness::Kind::vertex, Edge{}, w, tri, seen};
}

/// Some edge of `seer` edge-sees `tri`.
inline bool triangle_sees(const Graph& g, const Triangle& seer, const Triangle& tri) {
  for (const Edge& e : seer.edges())
    if (edge_sees(g, e, tri)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Ideal partition.

struct IdealPartition {
  std::vector<Triangle> t1, t2, t3, t4;
  std::vector<int> critical;  // parallel to t1
  VertexSet v_prime;
  VertexSet v_dprime;
  bool claim42_violated = false;  // some 𝒯₁ triangle has ℳ-edges seeing different vertices

  static VertexSet vertices_of(const std::vector<Triangle>& ts) {
    VertexSet s;
    for (const Triangle& t : ts) s |= t.vertices();
    return s;
  }
};

/// Which outsiders put a triangle outside 𝒯₁ into 𝒯₂: at least two other
/// triangles, or at least two singletons. Either way one ℳ-edge together
/// with one singleton also does.
enum class T2Rule { triangles, singletons };

/// Classes 𝒯₁, 𝒯₂ by the sees-counts, then 𝒯₃ by peeling every triangle
/// that sends at most 8(|D|−1) edges to the rest of D; what stays is 𝒯₄.
/// With `peel_seed` the peeling scans candidates in a shuffled order.
inline IdealPartition ideal_partition(const Graph& g, const TilingTriple& triple,
                                      std::optional<std::uint64_t> peel_seed = std::nullopt,
                                      T2Rule rule = T2Rule::singletons) {
  validate_triple(g, triple);
  std::vector<Triangle> tris = triple.triangles;
  std::sort(tris.begin(), tris.end());

  IdealPartition p;
  std::vector<Triangle> rest;
  for (const Triangle& t : tris) {
    int m_seers = 0;
    std::array<int, 3> hits{0, 0, 0};
    const auto verts = t.vertices_array();
    for (const Edge& e : triple.matching) {
      auto w = edge_sees(g, e, t);
      if (!w) continue;
      ++m_seers;
      for (int k = 0; k < 3; ++k)
        if (w->seen_vertices.contains(verts[k])) ++hits[k];
    }
    if (m_seers >= 2) {
      int k = static_cast<int>(std::max_element(hits.begin(), hits.end()) - hits.begin());
      p.t1.push_back(t);
      p.critical.push_back(verts[k]);
      p.v_dprime.insert(verts[k]);
      for (int j = 0; j < 3; ++j)
        if (j != k) p.v_prime.insert(verts[j]);
      // every seeing edge must see the same single vertex
      if (hits[k] != m_seers || std::count_if(hits.begin(), hits.end(), [](int h) { return h > 0; }) > 1)
        p.claim42_violated = true;
      continue;
    }
    int t_seers = 0;
    if (rule == T2Rule::triangles)
      for (const Triangle& other : tris)
        if (!(other == t) && triangle_sees(g, other, t)) ++t_seers;
    int i_seers = 0;
    for (int w : triple.singletons)
      if (vertex_sees(g, w, t)) ++i_seers;
    const int outsiders = rule == T2Rule::triangles ? t_seers : i_seers;
    if (outsiders >= 2 || (m_seers == 1 && i_seers >= 1))
      p.t2.push_back(t);
    else
      rest.push_back(t);
  }

  std::vector<Triangle> order = rest;
  if (peel_seed) {
    std::mt19937_64 rng(*peel_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<char> in_d(order.size(), 1);
  int d_size = static_cast<int>(order.size());
  VertexSet d_verts = IdealPartition::vertices_of(order);
  for (bool moved = true; moved && d_size > 0;) {
    moved = false;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (!in_d[k]) continue;
      const VertexSet tv = order[k].vertices();
      const long sent = edges_between(g, tv, d_verts - tv);
      if (sent <= 8L * (d_size - 1)) {
        p.t3.push_back(order[k]);
        in_d[k] = 0;
        --d_size;
        d_verts -= tv;
        moved = true;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < order.size(); ++k)
    if (in_d[k]) p.t4.push_back(order[k]);
  std::sort(p.t3.begin(), p.t3.end());
  std::sort(p.t4.begin(), p.t4.end());
  return p;
}

inline PartitionStats partition_stats(const IdealPartition& p, const TilingTriple& triple) {
  return {static_cast<long long>(p.t1.size()),      static_cast<long long>(p.t2.size()),
          static_cast<long long>(p.t3.size()),      static_cast<long long>(p.t4.size()),
          static_cast<long long>(triple.matching.size()), static_cast<long long>(triple.singletons.size())};
}

// ---------------------------------------------------------------------------
// Edge profile between the six parts.

enum PartClass { kT1 = 0, kT2, kT3, kT4, kM, kI, kPartClassCount };

inline const char* part_class_name(int c) {
  static const char* names[] = {"T1", "T2", "T3", "T4", "M", "I"};
  return names[c];
}

struct PartEdgeProfile {
  std::array<std::array<long, kPartClassCount>, kPartClassCount> e{};  // e[a][a] = e(A), else e(A,B)
  long h_prime = 0;           // e(V′ ∪ V(ℳ))
  long v_dprime_inside = 0;   // e(V″)
  long v_dprime_v_prime = 0;  // e(V″, V′)
  long v_dprime_m = 0;        // e(V″, V(ℳ))

  long total() const {
    long s = 0;
    for (int a = 0; a < kPartClassCount; ++a)
      for (int b = a; b < kPartClassCount; ++b) s += e[a][b];
    return s;
  }

  std::string to_csv() const {
    std::string out = "part";
    for (int b = 0; b < kPartClassCount; ++b) out += std::string(",") + part_class_name(b);
    out += "\n";
    for (int a = 0; a < kPartClassCount; ++a) {
      out += part_class_name(a);
      for (int b = 0; b < kPartClassCount; ++b) out += "," + std::to_string(e[a][b]);
      out += "\n";
    }
    out += "h_prime," + std::to_string(h_prime) + "\n";
    out += "e_vdprime," + std::to_string(v_dprime_inside) + "\n";
    out += "e_vdprime_vprime," + std::to_string(v_dprime_v_prime) + "\n";
    out += "e_vdprime_m," + std::to_string(v_dprime_m) + "\n";
    return out;
  }
};

inline std::array<VertexSet, kPartClassCount> part_vertex_sets(const IdealPartition& p, const TilingTriple& triple) {
  return {IdealPartition::vertices_of(p.t1), IdealPartition::vertices_of(p.t2), IdealPartition::vertices_of(p.t3),
          IdealPartition::vertices_of(p.t4), triple.matching_vertices(),       triple.singleton_set()};
}

inline PartEdgeProfile part_edge_profile(const Graph& g, const TilingTriple& triple, const IdealPartition& p) {
  const auto parts = part_vertex_sets(p, triple);
  PartEdgeProfile prof;
  for (int a = 0; a < kPartClassCount; ++a) {
    prof.e[a][a] = edges_within(g, parts[a]);
    for (int b = a + 1; b < kPartClassCount; ++b) prof.e[a][b] = prof.e[b][a] = edges_between(g, parts[a], parts[b]);
  }
  prof.h_prime = edges_within(g, p.v_prime | parts[kM]);
  prof.v_dprime_inside = edges_within(g, p.v_dprime);
  prof.v_dprime_v_prime = edges_between(g, p.v_dprime, p.v_prime);
  prof.v_dprime_m = edges_between(g, p.v_dprime, parts[kM]);
  return prof;
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json to_json(const Triangle& t) { return {t.a, t.b, t.c}; }
inline nlohmann::json to_json(const Edge& e) { return {e.u, e.v}; }

inline nlohmann::json triangles_json(const std::vector<Triangle>& ts) {
  nlohmann::json out = nlohmann::json::array();
  for (const Triangle& t : ts) out.push_back(to_json(t));
  return out;
}

inline nlohmann::json to_json(const TilingTriple& t) {
  nlohmann::json m = nlohmann::json::array();
  for (const Edge& e : t.matching) m.push_back(to_json(e));
  return {{"triangles", triangles_json(t.triangles)}, {"matching", m}, {"singletons", t.singletons}};
}

inline nlohmann::json to_json(const IdealPartition& p) {
  nlohmann::json crit = nlohmann::json::array();
  for (std::size_t k = 0; k < p.t1.size(); ++k) crit.push_back({{"triangle", to_json(p.t1[k])}, {"vertex", p.critical[k]}});
  return {{"t1", triangles_json(p.t1)},
          {"t2", triangles_json(p.t2)},
          {"t3", triangles_json(p.t3)},
          {"t4", triangles_json(p.t4)},
          {"critical", crit},
          {"v_prime", p.v_prime.to_vector()},
          {"v_dprime", p.v_dprime.to_vector()},
          {"claim42_violated", p.claim42_violated}};
}

}  // namespace rch
