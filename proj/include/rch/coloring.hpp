#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rch/graph.hpp"

namespace rch {

/// Position of pair {u, v} in the canonical edge order of K_n.
inline int pair_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Surjective edge coloring of K_n with colors 1..num_colors.
class EdgeColoring {
 public:
  EdgeColoring() = default;

  /// `colors` lists one color per pair in canonical edge order.
  EdgeColoring(int n, int num_colors, std::vector<int> colors)
      : n_(n), num_colors_(num_colors), colors_(std::move(colors)) {
    require(n >= 1 && n <= kMaxVertices, "coloring: vertex count must lie in [1, 128]");
    require(static_cast<int>(colors_.size()) == pair_count(n), "coloring: every pair needs exactly one color");
    require(num_colors >= (n >= 2 ? 1 : 0), "coloring: color count must be positive");
    std::vector<char> used(num_colors + 1, 0);
    for (int c : colors_) {
      require(c >= 1 && c <= num_colors, "coloring: color out of range");
      used[c] = 1;
    }
    for (int c = 1; c <= num_colors; ++c) require(used[c], "coloring: color " + std::to_string(c) + " is unused");
  }

  int order() const { return n_; }
  int num_colors() const { return num_colors_; }
  int color(int u, int v) const { return colors_[pair_index(n_, u, v)]; }
  const std::vector<int>& colors() const { return colors_; }

  /// Sizes of the color classes, index 0 unused.
  std::vector<int> class_sizes() const {
    std::vector<int> out(num_colors_ + 1, 0);
    for (int c : colors_) ++out[c];
    return out;
  }

  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

 private:
  int n_ = 0;
  int num_colors_ = 0;
  std::vector<int> colors_;
};

inline nlohmann::json to_json(const EdgeColoring& c) {
  nlohmann::json edges = nlohmann::json::array();
  for (int u = 0; u < c.order(); ++u)
    for (int v = u + 1; v < c.order(); ++v) edges.push_back({u, v, c.color(u, v)});
  return {{"n", c.order()}, {"num_colors", c.num_colors()}, {"edges", edges}};
}

inline EdgeColoring coloring_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("num_colors").get<int>();
    if (n < 1 || n > kMaxVertices) throw ParseError("coloring: vertex count must lie in [1, 128]");
    std::vector<int> colors(pair_count(n), 0);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("coloring: each edge is [u, v, color]");
      int u = e[0].get<int>(), v = e[1].get<int>(), col = e[2].get<int>();
      if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ParseError("coloring: bad pair");
      int& slot = colors[pair_index(n, u, v)];
      if (slot != 0) throw ParseError("coloring: pair listed twice");
      slot = col;
    }
    for (int c : colors)
      if (c == 0) throw ParseError("coloring: some pair has no color");
    return EdgeColoring(n, k, std::move(colors));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("coloring: ") + e.what());
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

/// Every pair gets its own color, in canonical order.
inline EdgeColoring rainbow_coloring(int n) {
  std::vector<int> colors(pair_count(n));
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = static_cast<int>(i) + 1;
  return EdgeColoring(n, pair_count(n), std::move(colors));
}

inline EdgeColoring monochromatic_coloring(int n) { return EdgeColoring(n, 1, std::vector<int>(pair_count(n), 1)); }

/// First edge (canonical order) of each color class.
inline Graph representative_graph(const EdgeColoring& c) {
  std::vector<char> seen(c.num_colors() + 1, 0);
  GraphBuilder b(c.order());
  for (int u = 0; u < c.order(); ++u)
    for (int v = u + 1; v < c.order(); ++v) {
      int col = c.color(u, v);
      if (!seen[col]) {
        seen[col] = 1;
        b.add_edge(u, v);
      }
    }
  return b.build();
}

}  // namespace rch
