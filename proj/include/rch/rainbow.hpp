#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "json.hpp"
#include "rch/coloring.hpp"
#include "rch/tiling.hpp"

namespace rch {

struct RainbowTiling {
  std::vector<Triangle> triangles;
  std::vector<int> colors;  // three per triangle, in triangle order
};

struct RainbowSearchResult {
  std::optional<RainbowTiling> witness;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;

  bool found() const { return witness.has_value(); }
  /// True only when the search proved that no witness exists.
  bool proved_absent() const { return !found() && status == SearchStatus::complete; }
};

inline bool is_rainbow_triangle(const EdgeColoring& c, const Triangle& t) {
  const int x = c.color(t.a, t.b), y = c.color(t.a, t.c), z = c.color(t.b, t.c);
  return x != y && x != z && y != z;
}

inline std::array<int, 3> triangle_colors(const EdgeColoring& c, const Triangle& t) {
  return {c.color(t.a, t.b), c.color(t.a, t.c), c.color(t.b, t.c)};
}

/// True when `tiling` is s disjoint triangles using 3s distinct colors.
inline bool is_rainbow_tiling(const EdgeColoring& c, const std::vector<Triangle>& tiling) {
  VertexSet used;
  std::vector<int> colors;
  for (const Triangle& t : tiling) {
    if (t.vertices().intersects(used)) return false;
    used |= t.vertices();
    for (int col : triangle_colors(c, t)) colors.push_back(col);
  }
  std::sort(colors.begin(), colors.end());
  return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
}

namespace detail {

// Triangles split by color classes. Every triangle whose three edges sit in
// singleton classes is automatically compatible with any disjoint triangle,
// so the search only branches over triangles touching a repeated color and
// finishes with a plain packing search in the singleton-class graph.
class RainbowSearch {
 public:
  RainbowSearch(const EdgeColoring& c, int s, NodeBudget& budget) : c_(c), s_(s), budget_(budget) {
    const int n = c.order();
    const std::vector<int> sizes = c.class_sizes();
    GraphBuilder single(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (sizes[c.color(u, v)] == 1) single.add_edge(u, v);
    single_ = single.build();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int d = b + 1; d < n; ++d) {
          Triangle t(a, b, d);
          if (!is_rainbow_triangle(c, t)) continue;
          auto cols = triangle_colors(c, t);
          if (sizes[cols[0]] == 1 && sizes[cols[1]] == 1 && sizes[cols[2]] == 1) continue;
          multi_.push_back(t);
        }
    used_color_.assign(c.num_colors() + 1, 0);
  }

  void run(std::size_t from, VertexSet avail) {
    if (found_ || !budget_.spend()) return;
    const int need = s_ - static_cast<int>(chosen_.size());
    if (need == 0) {
      found_ = true;
      result_ = chosen_;
      return;
    }
    TilingResult rest = find_tiling(single_, avail, need, budget_);
    if (rest.size >= need) {
      found_ = true;
      result_ = chosen_;
      result_.insert(result_.end(), rest.triangles.begin(), rest.triangles.end());
      return;
    }
    if (budget_.exhausted()) return;

    std::vector<std::size_t> cand;
    for (std::size_t k = from; k < multi_.size(); ++k)
      if (multi_[k].vertices().is_subset_of(avail) && colors_free(multi_[k])) cand.push_back(k);
    if (cand.empty()) return;
    std::vector<Triangle> all = triangles_within(single_, avail);
    for (std::size_t k : cand) all.push_back(multi_[k]);
    if (packing_bound(all, avail.size()) < need) return;

    for (std::size_t k : cand) {
      if (!colors_free(multi_[k])) continue;
      const auto cols = triangle_colors(c_, multi_[k]);
      for (int col : cols) used_color_[col] = 1;
      chosen_.push_back(multi_[k]);
      run(k + 1, avail - multi_[k].vertices());
      chosen_.pop_back();
      for (int col : cols) used_color_[col] = 0;
      if (found_ || budget_.exhausted()) return;
    }
  }

  bool found() const { return found_; }
  std::vector<Triangle> result() const {
    std::vector<Triangle> r = result_;
    std::sort(r.begin(), r.end());
    return r;
  }

 private:
  bool colors_free(const Triangle& t) const {
    for (int col : triangle_colors(c_, t))
      if (used_color_[col]) return false;
    return true;
  }

  const EdgeColoring& c_;
  int s_;
  NodeBudget& budget_;
  Graph single_;
  std::vector<Triangle> multi_;
  std::vector<char> used_color_;
  std::vector<Triangle> chosen_, result_;
  bool found_ = false;
};

}  // namespace detail

/// Exhaustive search for s vertex-disjoint triangles with 3s distinct colors.
inline RainbowSearchResult find_rainbow_tiling(const EdgeColoring& c, int s,
                                               std::uint64_t node_budget = kDefaultNodeBudget) {
  require(s >= 1 && 3 * s <= c.order(), "rainbow search: need 1 <= s <= n/3");
  NodeBudget budget(node_budget);
  detail::RainbowSearch search(c, s, budget);
  search.run(0, VertexSet::range(c.order()));
  RainbowSearchResult r;
  r.nodes = budget.used();
  if (search.found()) {
    RainbowTiling w;
    w.triangles = search.result();
    for (const Triangle& t : w.triangles)
      for (int col : triangle_colors(c, t)) w.colors.push_back(col);
    r.witness = std::move(w);
  } else {
    r.status = budget.status();
  }
  return r;
}

inline nlohmann::json to_json(const RainbowTiling& w) {
  return {{"triangles", triangles_json(w.triangles)}, {"colors", w.colors}};
}

}  // namespace rch
