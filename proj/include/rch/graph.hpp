#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "rch/common.hpp"
#include "rch/vertex_set.hpp"

namespace rch {

/// Unordered vertex pair stored as (min, max).
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  VertexSet vertices() const { return {u, v}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex triple stored in increasing order.
struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;

  Triangle() = default;
  Triangle(int x, int y, int z) {
    std::array<int, 3> v{x, y, z};
    std::sort(v.begin(), v.end());
    a = v[0];
    b = v[1];
    c = v[2];
  }

  std::array<int, 3> vertices_array() const { return {a, b, c}; }
  VertexSet vertices() const { return {a, b, c}; }
  std::array<Edge, 3> edges() const { return {Edge(a, b), Edge(a, c), Edge(b, c)}; }
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

template <int W>
class BasicGraphBuilder;

/// Simple undirected graph on at most 64·W vertices. Immutable; build one
/// with a builder.
template <int W>
class BasicGraph {
 public:
  using Set = BasicVertexSet<W>;
  static constexpr int kCapacity = Set::kCapacity;

  BasicGraph() = default;

  /// Edgeless graph on n vertices.
  explicit BasicGraph(int n) : n_(n) {
    require(n >= 0 && n <= kCapacity, "vertex count must lie in [0, " + std::to_string(kCapacity) + "]");
  }

  BasicGraph(int n, const std::vector<Edge>& edges);

  int order() const { return n_; }
  const Set& neighbors(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  int degree(int v) const { return adj_[v].size(); }
  Set vertices() const { return Set::range(n_); }

  friend bool operator==(const BasicGraph& x, const BasicGraph& y) { return x.n_ == y.n_ && x.adj_ == y.adj_; }

 private:
  friend class BasicGraphBuilder<W>;

  int n_ = 0;
  std::array<Set, kCapacity> adj_{};
};

template <int W>
class BasicGraphBuilder {
 public:
  using Set = BasicVertexSet<W>;

  explicit BasicGraphBuilder(int n) : g_(n) {}
  explicit BasicGraphBuilder(const BasicGraph<W>& g) : g_(g) {}

  int order() const { return g_.n_; }

  BasicGraphBuilder& add_edge(int u, int v) {
    check(u, v);
    g_.adj_[u].insert(v);
    g_.adj_[v].insert(u);
    return *this;
  }

  BasicGraphBuilder& remove_edge(int u, int v) {
    check(u, v);
    g_.adj_[u].erase(v);
    g_.adj_[v].erase(u);
    return *this;
  }

  /// Every pair inside `s`.
  BasicGraphBuilder& add_clique(const Set& s) {
    check_set(s);
    for (int u : s) {
      g_.adj_[u] |= s;
      g_.adj_[u].erase(u);
    }
    return *this;
  }

  /// Every pair with one end in `s` and one in `t` (must be disjoint).
  BasicGraphBuilder& add_complete_bipartite(const Set& s, const Set& t) {
    require(!s.intersects(t), "complete bipartite sides must be disjoint");
    check_set(s);
    check_set(t);
    for (int u : s) g_.adj_[u] |= t;
    for (int v : t) g_.adj_[v] |= s;
    return *this;
  }

  bool adjacent(int u, int v) const { return g_.adjacent(u, v); }
  BasicGraph<W> build() const { return g_; }

 private:
  void check(int u, int v) const {
    require(u >= 0 && v >= 0 && u < g_.n_ && v < g_.n_, "edge endpoint out of range");
    require(u != v, "self-loops are not allowed");
  }
  void check_set(const Set& s) const { require(s.is_subset_of(Set::range(g_.n_)), "vertex out of range"); }

  BasicGraph<W> g_;
};

template <int W>
BasicGraph<W>::BasicGraph(int n, const std::vector<Edge>& edges) : BasicGraph(n) {
  BasicGraphBuilder<W> b(*this);
  for (const Edge& e : edges) b.add_edge(e.u, e.v);
  *this = b.build();
}

using Graph = BasicGraph<2>;
using GraphBuilder = BasicGraphBuilder<2>;
/// Up to 256 vertices; used where only counting is needed.
using WideGraph = BasicGraph<4>;
using WideGraphBuilder = BasicGraphBuilder<4>;

inline Graph complete_graph(int n) {
  GraphBuilder b(n);
  b.add_clique(VertexSet::range(n));
  return b.build();
}

inline Graph cycle_graph(int n) {
  GraphBuilder b(n);
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
  return b.build();
}

inline Graph petersen_graph() {
  GraphBuilder b(10);
  for (int i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);
    b.add_edge(i, i + 5);
    b.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return b.build();
}

template <int W>
long edge_count(const BasicGraph<W>& g) {
  long twice = 0;
  for (int v = 0; v < g.order(); ++v) twice += g.degree(v);
  return twice / 2;
}

/// e(S): edges with both ends in s.
template <int W>
long edges_within(const BasicGraph<W>& g, const BasicVertexSet<W>& s) {
  long twice = 0;
  for (int v : s) twice += (g.neighbors(v) & s).size();
  return twice / 2;
}

/// e(S, T) for disjoint s and t.
template <int W>
long edges_between(const BasicGraph<W>& g, const BasicVertexSet<W>& s, const BasicVertexSet<W>& t) {
  require(!s.intersects(t), "edges_between: vertex sets must be disjoint");
  long count = 0;
  for (int v : s) count += (g.neighbors(v) & t).size();
  return count;
}

/// All edges in canonical (min, max) lexicographic order.
template <int W>
std::vector<Edge> edges(const BasicGraph<W>& g) {
  std::vector<Edge> out;
  for (int u = 0; u < g.order(); ++u)
    for (int v : g.neighbors(u))
      if (v > u) out.emplace_back(u, v);
  return out;
}

/// Every triangle once, lexicographic on (a, b, c).
template <int W>
std::vector<Triangle> enumerate_triangles(const BasicGraph<W>& g) {
  using Set = BasicVertexSet<W>;
  std::vector<Triangle> out;
  for (int a = 0; a < g.order(); ++a) {
    Set up = g.neighbors(a) - Set::range(a + 1);
    for (int b : up) {
      Set common = (up & g.neighbors(b)) - Set::range(b + 1);
      for (int c : common) out.emplace_back(a, b, c);
    }
  }
  return out;
}

inline bool is_triangle(const Graph& g, const Triangle& t) {
  return g.adjacent(t.a, t.b) && g.adjacent(t.a, t.c) && g.adjacent(t.b, t.c);
}

inline bool has_triangle(const Graph& g, const VertexSet& within) {
  for (int u : within) {
    VertexSet nu = g.neighbors(u) & within;
    for (int v : nu)
      if (v > u && (nu & g.neighbors(v)).intersects(within)) return true;
  }
  return false;
}

/// H[S], relabelled to 0..|S|-1 in increasing vertex order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<int> ids = s.to_vector();
  GraphBuilder b(static_cast<int>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (g.adjacent(ids[i], ids[j])) b.add_edge(static_cast<int>(i), static_cast<int>(j));
  return b.build();
}

template <int W>
BasicGraph<W> complement(const BasicGraph<W>& g) {
  BasicGraphBuilder<W> b(g.order());
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) b.add_edge(u, v);
  return b.build();
}

template <int W>
int min_degree(const BasicGraph<W>& g) {
  if (g.order() == 0) return 0;
  int best = g.degree(0);
  for (int v = 1; v < g.order(); ++v) best = std::min(best, g.degree(v));
  return best;
}

/// Connected components of H[within], each as a vertex set, ordered by
/// smallest member.
inline std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within) {
  std::vector<VertexSet> out;
  VertexSet left = within;
  while (!left.empty()) {
    VertexSet comp{left.first()};
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet next;
      for (int v : frontier) next |= g.neighbors(v) & within;
      next -= comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    left -= comp;
  }
  return out;
}

/// Two-colouring of H[within] by BFS; nullopt if an odd cycle exists. In
/// every component the smallest vertex gets the first side.
inline std::optional<std::pair<VertexSet, VertexSet>> bipartition(const Graph& g, const VertexSet& within) {
  VertexSet side0, side1;
  for (const VertexSet& comp : connected_components(g, within)) {
    VertexSet cur{comp.first()};
    VertexSet seen = cur;
    bool parity = false;
    while (!cur.empty()) {
      (parity ? side1 : side0) |= cur;
      VertexSet next;
      for (int v : cur) next |= g.neighbors(v) & within;
      next -= seen;
      seen |= next;
      cur = next;
      parity = !parity;
    }
  }
  for (int v : side0)
    if (g.neighbors(v).intersects(side0)) return std::nullopt;
  for (int v : side1)
    if (g.neighbors(v).intersects(side1)) return std::nullopt;
  return std::make_pair(side0, side1);
}

inline bool is_bipartite(const Graph& g) { return bipartition(g, g.vertices()).has_value(); }

}  // namespace rch
