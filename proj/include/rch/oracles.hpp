#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "json.hpp"
#include "rch/coloring.hpp"
#include "rch/constructions.hpp"
#include "rch/graph_io.hpp"
#include "rch/rainbow.hpp"
#include "rch/tiling.hpp"

namespace rch {

// ---------------------------------------------------------------------------
// ex(n, sK₃)

struct ExOracleResult {
  long value = -1;  // exact when complete
  long lower = -1;  // best sK₃-free graph found
  long upper = -1;  // proven upper bound
  SearchStatus status = SearchStatus::complete;
  Graph witness;
  std::string mode;  // "enumeration" or "branch-and-bound"
  std::uint64_t nodes = 0;
};

inline constexpr int kExEnumerationMaxN = 8;

namespace detail {

// Edge masks of every s-tiling of K_n over the canonical pair order.
inline std::vector<std::uint32_t> tiling_masks(int n, int s) {
  std::vector<std::uint32_t> tri;
  std::vector<VertexSet> tri_v;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        tri.push_back((1U << pair_index(n, a, b)) | (1U << pair_index(n, a, c)) | (1U << pair_index(n, b, c)));
        tri_v.push_back({a, b, c});
      }
  std::vector<std::uint32_t> out;
  std::function<void(std::size_t, int, std::uint32_t, VertexSet)> rec = [&](std::size_t from, int left,
                                                                            std::uint32_t mask, VertexSet used) {
    if (left == 0) {
      out.push_back(mask);
      return;
    }
    for (std::size_t k = from; k < tri.size(); ++k)
      if (!tri_v[k].intersects(used)) rec(k + 1, left - 1, mask | tri[k], used | tri_v[k]);
  };
  rec(0, s, 0, VertexSet{});
  return out;
}

inline Graph graph_from_mask(int n, std::uint64_t mask) {
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if ((mask >> pair_index(n, u, v)) & 1U) b.add_edge(u, v);
  return b.build();
}

// Sizes go down from C(n,2); inside a size masks go up in Gosper order. The
// first sK₃-free mask is the answer.
inline ExOracleResult ex_by_enumeration(int n, int s, NodeBudget& budget) {
  const int m = pair_count(n);
  const std::vector<std::uint32_t> tilings = tiling_masks(n, s);
  ExOracleResult r;
  r.mode = "enumeration";
  r.upper = m;
  for (int k = m; k >= 0; --k) {
    if (k == 0) {
      r.value = r.lower = 0;
      r.witness = Graph(n);
      return r;
    }
    const std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t x = (std::uint64_t{1} << k) - 1; x < limit;) {
      if (!budget.spend()) {
        r.status = SearchStatus::indeterminate;
        return r;
      }
      const auto mask = static_cast<std::uint32_t>(x);
      bool free = true;
      for (std::uint32_t t : tilings)
        if ((mask & t) == t) {
          free = false;
          break;
        }
      if (free) {
        r.value = r.lower = k;
        r.witness = graph_from_mask(n, mask);
        return r;
      }
      const std::uint64_t c = x & (~x + 1), y = x + c;
      x = (((x ^ y) >> 2) / c) | y;
    }
    r.upper = k - 1;
  }
  return r;
}

// Branch on the 3s edges of a found tiling; edges branched on earlier in the
// same node are fixed (never deleted) in later siblings.
class ExBranchAndBound {
 public:
  ExBranchAndBound(int n, int s, NodeBudget& budget) : n_(n), s_(s), budget_(budget) {}

  void seed(const Graph& g) {
    if (edge_count(g) > best_ && find_tiling(g, s_, kDefaultNodeBudget).size < s_) {
      best_ = edge_count(g);
      witness_ = g;
    }
  }

  // Lower bound on how many edges must still be deleted: greedily peel off
  // tilings that share no deletable edge. -1 if some tiling is all fixed.
  int deletions_needed(const Graph& cur, const Graph& fixed, std::vector<Triangle>* first) {
    GraphBuilder work(cur);
    int lb = 0;
    for (;;) {
      const Graph g = work.build();
      TilingResult t = find_tiling(g, g.vertices(), s_, budget_);
      if (t.size < s_) return lb;
      bool deletable = false;
      for (const Triangle& tri : t.triangles)
        for (const Edge& e : tri.edges())
          if (!fixed.adjacent(e.u, e.v)) {
            deletable = true;
            work.remove_edge(e.u, e.v);
          }
      if (!deletable) return -1;
      if (lb == 0 && first) *first = t.triangles;
      ++lb;
      if (budget_.exhausted()) return lb;
    }
  }

  void run(const Graph& cur, const Graph& fixed) {
    if (!budget_.spend()) return;
    std::vector<Triangle> tiling;
    const int lb = deletions_needed(cur, fixed, &tiling);
    if (lb < 0 || budget_.exhausted()) return;
    const long edges_now = edge_count(cur);
    if (lb == 0) {
      if (edges_now > best_) {
        best_ = edges_now;
        witness_ = cur;
      }
      return;
    }
    if (edges_now - lb <= best_) return;
    GraphBuilder fix(fixed);
    for (const Triangle& tri : tiling)
      for (const Edge& e : tri.edges()) {
        if (fixed.adjacent(e.u, e.v) || fix.adjacent(e.u, e.v)) continue;
        GraphBuilder next(cur);
        next.remove_edge(e.u, e.v);
        run(next.build(), fix.build());
        if (budget_.exhausted()) return;
        fix.add_edge(e.u, e.v);
      }
  }

  long best() const { return best_; }
  const Graph& witness() const { return witness_; }

 private:
  int n_;
  int s_;
  NodeBudget& budget_;
  long best_ = -1;
  Graph witness_;
};

}  // namespace detail

/// Exact ex(n, sK₃): full enumeration for n ≤ 8 (unless `force_bb`),
/// branch-and-bound otherwise.
inline ExOracleResult ex_oracle(int n, int s, std::uint64_t node_budget = kDefaultNodeBudget, bool force_bb = false) {
  require(n >= 1 && n <= kMaxVertices, "ex oracle: n must lie in [1, 128]");
  require(s >= 1, "ex oracle: s must be positive");
  NodeBudget budget(node_budget);
  ExOracleResult r;
  if (3 * s > n) {
    r.value = r.lower = r.upper = pair_count(n);
    r.witness = complete_graph(n);
    r.mode = "trivial";
    return r;
  }
  if (n <= kExEnumerationMaxN && !force_bb) {
    r = detail::ex_by_enumeration(n, s, budget);
    r.nodes = budget.used();
    return r;
  }
  detail::ExBranchAndBound bb(n, s, budget);
  bb.seed(Graph(n));
  for (Family f : kAllFamilies) {
    ConstructionSpec spec(f, n, s - 1);
    if (is_valid(spec)) bb.seed(build_construction(spec).graph);
  }
  const Graph kn = complete_graph(n);
  const int root_lb = bb.deletions_needed(kn, Graph(n), nullptr);
  bb.run(kn, Graph(n));
  r.mode = "branch-and-bound";
  r.nodes = budget.used();
  r.status = budget.status();
  r.lower = bb.best();
  r.witness = bb.witness();
  r.upper = pair_count(n) - std::max(root_lb, 0);
  if (r.status == SearchStatus::complete) r.value = r.upper = r.lower;
  return r;
}

inline nlohmann::json to_json(const ExOracleResult& r) {
  return {{"value", r.value},
          {"lower", r.lower},
          {"upper", r.upper},
          {"status", std::string(to_string(r.status))},
          {"mode", r.mode},
          {"witness_edges", r.lower >= 0 ? edge_count(r.witness) : -1},
          {"witness_graph6", r.lower >= 0 ? nlohmann::json(to_graph6(r.witness)) : nlohmann::json()}};
}

// ---------------------------------------------------------------------------
// ar(n, sK₃)

struct ArOracleResult {
  int value = -1;           // ar = max rainbow-free color count + 1, when complete
  int best_colors = 0;      // largest surjective color count seen without a rainbow sK₃
  std::optional<EdgeColoring> witness;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;
  int prefixes = 0;
  int prefixes_resumed = 0;
};

inline constexpr int kArOracleDefaultMaxN = 6;

namespace detail {

struct ArPrefixOutcome {
  int best = 0;
  std::vector<int> colors;  // witness, empty if none found
  bool complete = true;
  std::uint64_t nodes = 0;
};

// Restricted-growth strings over the canonical pair order. A prefix is cut
// as soon as its fully colored triangles already hold a rainbow sK₃, or when
// even fresh colors on every remaining pair cannot beat the best so far.
class ArSearch {
 public:
  ArSearch(int n, int s) : n_(n), s_(s), m_(pair_count(n)) {
    pairs_.resize(m_);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs_[pair_index(n, u, v)] = {u, v};
    // triangles completed when their largest pair index is assigned
    completes_.resize(m_);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          const int e1 = pair_index(n, a, b), e2 = pair_index(n, a, c), e3 = pair_index(n, b, c);
          completes_[std::max({e1, e2, e3})].push_back({Triangle(a, b, c), {e1, e2, e3}});
        }
  }

  int pair_total() const { return m_; }

  /// Every restricted-growth prefix of the given length.
  std::vector<std::vector<int>> prefixes(int depth) const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int used) {
      if (static_cast<int>(cur.size()) == depth) {
        out.push_back(cur);
        return;
      }
      for (int c = 1; c <= used + 1; ++c) {
        cur.push_back(c);
        rec(std::max(used, c));
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }

  ArPrefixOutcome search(const std::vector<int>& prefix, std::uint64_t node_budget) {
    budget_ = NodeBudget(node_budget);
    color_.assign(m_, 0);
    rainbow_.clear();
    out_ = ArPrefixOutcome{};
    int used = 0;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      color_[k] = prefix[k];
      used = std::max(used, prefix[k]);
      if (creates_rainbow_tiling(static_cast<int>(k))) {
        out_.nodes = budget_.used();
        return out_;
      }
    }
    dfs(static_cast<int>(prefix.size()), used);
    out_.complete = !budget_.exhausted();
    out_.nodes = budget_.used();
    return out_;
  }

 private:
  struct Completion {
    Triangle tri;
    std::array<int, 3> pairs;
  };

  void dfs(int k, int used) {
    if (!budget_.spend()) return;
    if (used + (m_ - k) <= out_.best) return;
    if (k == m_) {
      out_.best = used;
      out_.colors = color_;
      return;
    }
    // a fresh color first: it reaches large color counts sooner
    for (int c = used + 1; c >= 1; --c) {
      color_[k] = c;
      const std::size_t mark = rainbow_.size();
      if (!creates_rainbow_tiling(k)) dfs(k + 1, std::max(used, c));
      rainbow_.resize(mark);
      color_[k] = 0;
      if (budget_.exhausted()) return;
    }
  }

  // Records the rainbow triangles completed at pair k and reports whether
  // one of them extends to a rainbow s-tiling among completed triangles.
  bool creates_rainbow_tiling(int k) {
    for (const Completion& cp : completes_[k]) {
      const int x = color_[cp.pairs[0]], y = color_[cp.pairs[1]], z = color_[cp.pairs[2]];
      if (x == y || x == z || y == z) continue;
      rainbow_.push_back({cp.tri, {x, y, z}});
      if (extends(rainbow_.back())) return true;
    }
    return false;
  }

  struct Colored {
    Triangle tri;
    std::array<int, 3> colors;
  };

  bool extends(const Colored& seed) {
    std::vector<const Colored*> chosen{&seed};
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
      if (static_cast<int>(chosen.size()) == s_) return true;
      for (std::size_t j = from; j < rainbow_.size(); ++j) {
        const Colored& c = rainbow_[j];
        bool ok = true;
        for (const Colored* p : chosen) {
          if (p->tri.vertices().intersects(c.tri.vertices())) ok = false;
          for (int a : p->colors)
            for (int b : c.colors)
              if (a == b) ok = false;
          if (!ok) break;
        }
        if (!ok) continue;
        chosen.push_back(&c);
        if (rec(j + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    return rec(0);
  }

  int n_, s_, m_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<Completion>> completes_;
  std::vector<int> color_;
  std::vector<Colored> rainbow_;
  NodeBudget budget_{0};
  ArPrefixOutcome out_;
};

inline nlohmann::json to_json(const ArPrefixOutcome& o) {
  return {{"best", o.best}, {"colors", o.colors}, {"complete", o.complete}, {"nodes", o.nodes}};
}

inline ArPrefixOutcome prefix_outcome_from_json(const nlohmann::json& j) {
  ArPrefixOutcome o;
  o.best = j.at("best").get<int>();
  o.colors = j.at("colors").get<std::vector<int>>();
  o.complete = j.at("complete").get<bool>();
  o.nodes = j.at("nodes").get<std::uint64_t>();
  return o;
}

}  // namespace detail

struct ArOracleOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;  // split evenly across prefixes
  int workers = 1;
  int max_n = kArOracleDefaultMaxN;
  int prefix_depth = 5;
  std::optional<std::filesystem::path> checkpoint;  // read on start, rewritten after each prefix
};

/// Exact ar(n, sK₃) by exhaustive search over colorings up to relabeling.
/// The search space is cut into restricted-growth prefixes that are solved
/// independently, so the result does not depend on the worker count.
inline ArOracleResult ar_oracle(int n, int s, const ArOracleOptions& opt = {}) {
  require(n >= 3 && n <= opt.max_n, "ar oracle: n must lie in [3, " + std::to_string(opt.max_n) + "]");
  require(s >= 1 && 3 * s <= n, "ar oracle: need 1 <= s <= n/3");
  require(opt.workers >= 1, "ar oracle: worker count must be positive");
  detail::ArSearch proto(n, s);
  const int depth = std::min(opt.prefix_depth, proto.pair_total());
  const std::vector<std::vector<int>> prefixes = proto.prefixes(depth);
  const std::uint64_t per_prefix = std::max<std::uint64_t>(1, opt.node_budget / prefixes.size());

  std::vector<std::optional<detail::ArPrefixOutcome>> done(prefixes.size());
  ArOracleResult r;
  r.prefixes = static_cast<int>(prefixes.size());
  if (opt.checkpoint && std::filesystem::exists(*opt.checkpoint)) {
    std::ifstream in(*opt.checkpoint);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("ar oracle checkpoint: " + std::string(e.what()));
    }
    if (j.value("n", -1) != n || j.value("s", -1) != s || j.value("prefix_depth", -1) != depth ||
        j.value("per_prefix_budget", std::uint64_t{0}) != per_prefix)
      throw InputError("ar oracle checkpoint does not match this run's parameters");
    for (const auto& [key, val] : j.at("done").items()) {
      const std::size_t idx = std::stoul(key);
      if (idx < done.size()) {
        done[idx] = detail::prefix_outcome_from_json(val);
        ++r.prefixes_resumed;
      }
    }
  }

  std::mutex mu;
  auto save = [&] {
    if (!opt.checkpoint) return;
    nlohmann::json d = nlohmann::json::object();
    for (std::size_t k = 0; k < done.size(); ++k)
      if (done[k]) d[std::to_string(k)] = detail::to_json(*done[k]);
    nlohmann::json j = {{"n", n}, {"s", s}, {"prefix_depth", depth}, {"per_prefix_budget", per_prefix}, {"done", d}};
    const std::filesystem::path tmp = opt.checkpoint->string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
      out << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, *opt.checkpoint);
  };

  std::size_t next = 0;
  auto worker = [&] {
    detail::ArSearch search(n, s);
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        while (next < prefixes.size() && done[next]) ++next;
        if (next >= prefixes.size()) return;
        k = next++;
      }
      detail::ArPrefixOutcome o = search.search(prefixes[k], per_prefix);
      std::lock_guard<std::mutex> lock(mu);
      done[k] = std::move(o);
      save();
    }
  };
  if (opt.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < opt.workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  const detail::ArPrefixOutcome* best = nullptr;
  for (const auto& o : done) {
    r.nodes += o->nodes;
    if (!o->complete) r.status = SearchStatus::indeterminate;
    if (!o->colors.empty() && (!best || o->best > best->best)) best = &*o;
  }
  if (best) {
    r.best_colors = best->best;
    r.witness = EdgeColoring(n, best->best, best->colors);
  }
  if (r.status == SearchStatus::complete) r.value = r.best_colors + 1;
  return r;
}

struct Sandwich {
  long lower = 0;  // ex(n,(s-1)K₃) + 2
  long upper = 0;  // ex(n, sK₃) + 1
};

/// ex(n,(s−1)K₃)+2 ≤ ar(n,sK₃) ≤ ex(n,sK₃)+1. For s = 1 the lower end is 2,
/// since one color never makes a rainbow triangle.
inline Sandwich ar_sandwich(int n, int s, std::uint64_t node_budget = kDefaultNodeBudget) {
  Sandwich w;
  w.lower = s >= 2 ? ex_oracle(n, s - 1, node_budget).value + 2 : 2;
  w.upper = ex_oracle(n, s, node_budget).value + 1;
  return w;
}

inline nlohmann::json to_json(const ArOracleResult& r) {
  nlohmann::json j = {{"value", r.value},
                      {"best_colors", r.best_colors},
                      {"status", std::string(to_string(r.status))},
                      {"nodes", r.nodes},
                      {"prefixes", r.prefixes}};
  j["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json();
  return j;
}

}  // namespace rch
