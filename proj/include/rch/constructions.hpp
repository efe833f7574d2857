#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rch/coloring.hpp"
#include "rch/formulas.hpp"
#include "rch/graph.hpp"
#include "rch/rainbow.hpp"
#include "rch/tiling.hpp"

namespace rch {

enum class Family { E1, E2, E3, E4, E5, G1, G2, G3, G4 };

inline constexpr Family kAllFamilies[] = {Family::E1, Family::E2, Family::E3, Family::E4, Family::E5,
                                         Family::G1, Family::G2, Family::G3, Family::G4};
inline constexpr Family kEFamilies[] = {Family::E1, Family::E2, Family::E3, Family::E4, Family::E5};

inline std::string to_string(Family f) {
  static const char* names[] = {"E1", "E2", "E3", "E4", "E5", "G1", "G2", "G3", "G4"};
  return names[static_cast<int>(f)];
}

inline Family parse_family(const std::string& s) {
  for (Family f : kAllFamilies)
    if (to_string(f) == s) return f;
  throw InputError("unknown construction family '" + s + "' (expected E1..E5 or G1..G4)");
}

inline bool is_e_family(Family f) { return static_cast<int>(f) <= static_cast<int>(Family::E5); }

enum class Part { X, Y, Y1, Y2, Y3, Y4 };

inline std::string to_string(Part p) {
  static const char* names[] = {"X", "Y", "Y1", "Y2", "Y3", "Y4"};
  return names[static_cast<int>(p)];
}

struct ConstructionSpec {
  Family family = Family::E1;
  long long n = 0;
  long long t = 0;
  std::optional<long long> gamma4_y1;  // |Y1| = |Y3| for G4; balanced by default
  bool shrink_e3_x = false;            // E3 with |X| = 2t+1 for comparison runs

  ConstructionSpec() = default;
  ConstructionSpec(Family f, long long n_, long long t_) : family(f), n(n_), t(t_) {}
};

using PartSizes = std::vector<std::pair<Part, long long>>;

/// Part sizes in vertex order; throws naming the violated constraint.
inline PartSizes part_sizes(const ConstructionSpec& s) {
  const long long n = s.n, t = s.t;
  require(n >= 1 && n <= WideGraph::kCapacity, "construction: n must lie in [1, 256]");
  require(t >= 0, "construction: t must be non-negative");
  require(3 * t <= n, "construction: requires n >= 3t");
  switch (s.family) {
    case Family::E1:
    case Family::G1:
      return {{Part::X, t}, {Part::Y1, (n - t) / 2}, {Part::Y2, (n - t + 1) / 2}};
    case Family::E2:
    case Family::G2:
      require(e2_valid(n, t), to_string(s.family) + ": requires ceil(n/2) >= 2t+1");
      return {{Part::X, 2 * t + 1}, {Part::Y1, n / 2}, {Part::Y2, (n + 1) / 2 - 2 * t - 1}};
    case Family::E3: {
      const long long x = s.shrink_e3_x ? 2 * t + 1 : 2 * t + 2;
      require(n >= x, s.shrink_e3_x ? "E3: requires n >= 2t+1" : "E3: requires n >= 2t+2");
      return {{Part::X, x}, {Part::Y, n - x}};
    }
    case Family::E4:
      require(6 * t - n + 6 >= 0, "E4: requires 6t-n+6 >= 0");
      require(n - 3 * t - 3 >= 0, "E4: requires n-3t-3 >= 0");
      return {{Part::X, 6 * t - n + 6}, {Part::Y1, n - 3 * t - 3}, {Part::Y2, n - 3 * t - 3}};
    case Family::E5:
      require(n >= 3 * t + 6, "E5: requires n >= 3t+6");
      return {{Part::X, 3 * t + 5}, {Part::Y, n - 3 * t - 5}};
    case Family::G3:
      require(gamma3_valid(n, t), "G3: requires n >= 2t+1");
      return {{Part::X, 2 * t + 1}, {Part::Y1, n - 2 * t - 1}};
    case Family::G4: {
      require(6 * t - n + 4 >= 0, "G4: requires 6t-n+4 >= 0");
      require(n - 3 * t - 2 >= 0, "G4: requires n-3t-2 >= 0");
      const long long total = n - 3 * t - 2;
      const long long a = s.gamma4_y1.value_or((total + 1) / 2);
      require(a >= 0 && a <= total, "G4: requires 0 <= |Y1| <= n-3t-2");
      return {{Part::X, 6 * t - n + 4}, {Part::Y1, a}, {Part::Y2, total - a}, {Part::Y3, a}, {Part::Y4, total - a}};
    }
  }
  throw InputError("construction: unknown family");
}

inline bool is_valid(const ConstructionSpec& s) {
  try {
    part_sizes(s);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

inline BigInt closed_form_edge_count(const ConstructionSpec& s) {
  part_sizes(s);
  switch (s.family) {
    case Family::E1: case Family::G1: return e1_value(s.n, s.t);
    case Family::E2: case Family::G2: return e2_value(s.n, s.t);
    case Family::E3: return s.shrink_e3_x ? gamma3_value(s.n, s.t) : e3_value(s.n, s.t);
    case Family::E4: return e4_value(s.n, s.t);
    case Family::E5: return e5_value(s.n, s.t);
    case Family::G3: return gamma3_value(s.n, s.t);
    case Family::G4: return gamma4_value(s.n, s.t);
  }
  return 0;
}

template <int W>
struct BasicPartedGraph {
  BasicGraph<W> graph;
  std::map<Part, BasicVertexSet<W>> parts;

  const BasicVertexSet<W>& part(Part p) const { return parts.at(p); }
};

using PartedGraph = BasicPartedGraph<2>;

/// Membership test written straight from the definitions, independent of
/// the builder below; used to regenerate edge sets.
inline bool is_construction_edge(Family f, Part a, Part b, int u, int v) {
  auto either = [&](Part p, Part q) { return (a == p && b == q) || (a == q && b == p); };
  auto in = [](Part p, std::initializer_list<Part> ps) {
    for (Part q : ps)
      if (p == q) return true;
    return false;
  };
  if (a == Part::X && b == Part::X) return true;  // X is a clique in every family
  switch (f) {
    case Family::E1:
    case Family::G1:
      return a != b;
    case Family::E2:
    case Family::G2:
    case Family::E4:
      return either(Part::X, Part::Y1) || either(Part::Y1, Part::Y2);
    case Family::E3:
      return either(Part::X, Part::Y);
    case Family::G3:
      return either(Part::X, Part::Y1);
    case Family::E5:
      return a == Part::Y && b == Part::Y && (v == u + 1 || u == v + 1);
    case Family::G4:
      if (either(Part::X, Part::Y1) || either(Part::X, Part::Y2)) return true;
      return (in(a, {Part::Y1, Part::Y4}) && in(b, {Part::Y2, Part::Y3})) ||
             (in(b, {Part::Y1, Part::Y4}) && in(a, {Part::Y2, Part::Y3}));
  }
  return false;
}

/// Width 2 holds up to 128 vertices; pass W = 4 for up to 256.
template <int W = 2>
BasicPartedGraph<W> build_construction(const ConstructionSpec& s) {
  const PartSizes sizes = part_sizes(s);
  require(s.n <= BasicGraph<W>::kCapacity,
          "construction: n exceeds graph capacity " + std::to_string(BasicGraph<W>::kCapacity));
  BasicPartedGraph<W> pg;
  int next = 0;
  for (const auto& [part, size] : sizes) {
    BasicVertexSet<W> vs;
    for (long long k = 0; k < size; ++k) vs.insert(next++);
    pg.parts[part] = vs;
  }
  BasicGraphBuilder<W> b(static_cast<int>(s.n));
  auto P = [&](Part p) { return pg.parts.at(p); };
  b.add_clique(P(Part::X));
  switch (s.family) {
    case Family::E1:
    case Family::G1:
      b.add_complete_bipartite(P(Part::X), P(Part::Y1) | P(Part::Y2));
      b.add_complete_bipartite(P(Part::Y1), P(Part::Y2));
      break;
    case Family::E2:
    case Family::G2:
    case Family::E4:
      b.add_complete_bipartite(P(Part::X), P(Part::Y1));
      b.add_complete_bipartite(P(Part::Y1), P(Part::Y2));
      break;
    case Family::E3:
      b.add_complete_bipartite(P(Part::X), P(Part::Y));
      break;
    case Family::G3:
      b.add_complete_bipartite(P(Part::X), P(Part::Y1));
      break;
    case Family::E5: {
      std::vector<int> y = P(Part::Y).to_vector();
      for (std::size_t k = 0; k + 1 < y.size(); ++k) b.add_edge(y[k], y[k + 1]);
      break;
    }
    case Family::G4:
      b.add_complete_bipartite(P(Part::X), P(Part::Y1) | P(Part::Y2));
      b.add_complete_bipartite(P(Part::Y1) | P(Part::Y4), P(Part::Y2) | P(Part::Y3));
      break;
  }
  pg.graph = b.build();
  return pg;
}

/// Rebuilds the edge set pair by pair from the parts map and compares.
template <int W>
bool regenerates(const ConstructionSpec& s, const BasicPartedGraph<W>& pg) {
  const int n = pg.graph.order();
  std::vector<Part> label(n);
  BasicVertexSet<W> covered;
  for (const auto& [part, vs] : pg.parts) {
    if (vs.intersects(covered)) return false;
    covered |= vs;
    for (int v : vs) label[v] = part;
  }
  if (covered != pg.graph.vertices()) return false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (pg.graph.adjacent(u, v) != is_construction_edge(s.family, label[u], label[v], u, v)) return false;
  return true;
}

inline TilingResult max_tiling_of_construction(const ConstructionSpec& s,
                                               std::uint64_t node_budget = kDefaultNodeBudget) {
  return max_tiling_number(build_construction<2>(s).graph, node_budget);
}

/// The coloring witnessing ar(n,(t+2)K₃) > e_i(n,t)+1. E1–E4: the
/// construction's edges get distinct colors in canonical order, the
/// complement one extra color. E5: the clique X = first 3t+5 vertices is
/// rainbow and v_i (the i-th outside vertex) colors its edges to X and to
/// later v_j with B+i, where B = C(3t+5, 2).
inline EdgeColoring build_lower_bound_coloring(const ConstructionSpec& s) {
  require(is_e_family(s.family), "lower-bound colorings exist only for E1..E5");
  const int n = static_cast<int>(s.n);
  std::vector<int> colors(pair_count(n), 0);
  if (s.family == Family::E5) {
    require(s.t >= 0 && s.n >= 3 * s.t + 5 && s.n <= kMaxVertices, "E5 coloring: requires n >= 3t+5");
    const int x = static_cast<int>(3 * s.t + 5);
    const int base = x * (x - 1) / 2;
    int next = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        int& slot = colors[pair_index(n, u, v)];
        if (v < x)
          slot = ++next;
        else
          slot = base + (std::min(u, v) < x ? v - x + 1 : u - x + 1);
      }
    return EdgeColoring(n, base + (n - x), std::move(colors));
  }
  const Graph g = build_construction<2>(s).graph;
  int next = 0;
  const bool has_complement = edge_count(g) < pair_count(n);
  const int extra = static_cast<int>(edge_count(g)) + 1;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) colors[pair_index(n, u, v)] = g.adjacent(u, v) ? ++next : extra;
  return EdgeColoring(n, has_complement ? extra : extra - 1, std::move(colors));
}

/// max over valid E_i of |E(E_i(n,t))|, counted on built graphs.
inline long xi_from_constructions(const ProblemParams& p) {
  long best = -1;
  for (Family f : kEFamilies) {
    ConstructionSpec spec{f, p.n, p.t};
    if (!is_valid(spec)) continue;
    best = std::max(best, edge_count(build_construction<4>(spec).graph));
  }
  require(best >= 0, "no construction is valid for these parameters");
  return best;
}

struct ColoringVerdict {
  bool rainbow_free = false;  // meaningful only when status is complete
  SearchStatus status = SearchStatus::complete;
  std::optional<RainbowTiling> witness;
  std::uint64_t nodes = 0;
};

/// Exhaustive check that the lower-bound coloring has no rainbow (t+2)K₃.
inline ColoringVerdict verify_lower_bound_coloring(const ConstructionSpec& s,
                                                   std::uint64_t node_budget = kDefaultNodeBudget) {
  const EdgeColoring c = build_lower_bound_coloring(s);
  ColoringVerdict v;
  if (3 * (s.t + 2) > s.n) {  // not enough vertices for (t+2) triangles at all
    v.rainbow_free = true;
    return v;
  }
  RainbowSearchResult r = find_rainbow_tiling(c, static_cast<int>(s.t + 2), node_budget);
  v.nodes = r.nodes;
  v.witness = r.witness;
  v.status = r.found() ? SearchStatus::complete : r.status;
  v.rainbow_free = r.proved_absent();
  return v;
}

template <int W>
nlohmann::json to_json(const BasicPartedGraph<W>& pg) {
  nlohmann::json parts = nlohmann::json::object();
  for (const auto& [p, vs] : pg.parts) parts[to_string(p)] = vs.to_vector();
  nlohmann::json es = nlohmann::json::array();
  for (const Edge& e : edges(pg.graph)) es.push_back({e.u, e.v});
  return {{"n", pg.graph.order()}, {"edge_count", edge_count(pg.graph)}, {"parts", parts}, {"edges", es}};
}

}  // namespace rch
