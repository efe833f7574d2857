#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "rch/lemmas.hpp"
#include "rch/oracles.hpp"
#include "rch/parallel.hpp"

namespace rch {

enum class ScanMode { exhaustive, random };

inline ScanMode parse_scan_mode(const std::string& s) {
  if (s == "exhaustive") return ScanMode::exhaustive;
  if (s == "random") return ScanMode::random;
  throw InputError("scan mode must be exhaustive or random, got " + s);
}

inline std::string to_string(ScanMode m) { return m == ScanMode::exhaustive ? "exhaustive" : "random"; }

inline constexpr int kExhaustiveScanMaxN = 6;
inline constexpr int kRandomScanMaxN = 16;
inline constexpr double kScanEdgeProbabilities[] = {0.2, 0.5, 0.8};

struct ScanOptions {
  ScanMode mode = ScanMode::random;
  int n_min = 7;  // random mode only; exhaustive scans exactly n_max
  int n_max = 12;
  std::uint64_t samples = 1000;  // random mode only
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  bool keep_traces = false;
  std::size_t max_examples = 20;
  T2Rule t2_rule = T2Rule::singletons;
};

struct LemmaTally {
  std::string id;
  bool asserted = true;
  std::uint64_t guarded = 0;
  std::uint64_t violations = 0;
};

struct ScanSummary {
  ScanOptions options;
  std::uint64_t instances = 0;
  std::uint64_t indeterminate = 0;
  std::vector<LemmaTally> tallies;
  std::uint64_t violations = 0;
  std::uint64_t sensitive_instances = 0;  // asserted verdicts differ between peeling orders
  std::uint64_t value_changes = 0;        // class sizes differ, asserted verdicts equal
  std::vector<nlohmann::json> violation_examples;
  std::vector<nlohmann::json> sensitivity_examples;
  std::vector<std::string> traces;  // one JSON line per instance, in instance order

  bool clean() const { return violations == 0 && sensitive_instances == 0 && indeterminate == 0; }
};

/// All asserted-or-not reports that the scan evaluates, in a fixed order.
inline std::vector<LemmaReport> scan_reports(const Graph& g, const Decomposition& d) {
  std::vector<LemmaReport> out = check_appendix_bounds(g, d);
  std::vector<LemmaReport> glob = check_global_bounds(g, d);
  out.insert(out.end(), glob.begin(), glob.end());
  return out;
}

namespace detail {

inline Graph scan_instance(const ScanOptions& o, std::uint64_t k) {
  if (o.mode == ScanMode::exhaustive) return graph_from_mask(o.n_max, k);
  std::mt19937_64 rng(derive_seed(o.seed, k));
  const int n = o.n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(o.n_max - o.n_min + 1));
  const double p = kScanEdgeProbabilities[rng() % 3];
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) b.add_edge(u, v);
  return b.build();
}

}  // namespace detail

/// Checks every asserted bound on every generated graph under the canonical
/// and one shuffled peeling order.
inline ScanSummary scan_for_counterexamples(const ScanOptions& o) {
  require(o.workers >= 1, "scan: worker count must be at least 1");
  require(o.node_budget >= 1, "scan: node budget must be positive");
  if (o.mode == ScanMode::exhaustive) {
    require(o.n_max >= 1 && o.n_max <= kExhaustiveScanMaxN, "scan: exhaustive mode requires 1 <= n <= 6");
  } else {
    require(o.n_min >= 1 && o.n_min <= o.n_max && o.n_max <= kRandomScanMaxN,
            "scan: random mode requires 1 <= n_min <= n_max <= 16");
  }
  const std::uint64_t total =
      o.mode == ScanMode::exhaustive ? std::uint64_t{1} << pair_count(o.n_max) : o.samples;
  constexpr std::uint64_t kChunk = 512;
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<ScanSummary> parts(chunks);

  parallel_for(chunks, o.workers, [&](std::size_t c) {
    ScanSummary& s = parts[c];
    for (std::uint64_t k = c * kChunk; k < std::min(total, (c + 1) * kChunk); ++k) {
      const Graph g = detail::scan_instance(o, k);
      ++s.instances;
      TripleResult tr = maximal_tiling_triple(g, o.node_budget);
      if (tr.status != SearchStatus::complete) {
        ++s.indeterminate;
        if (o.keep_traces)
          s.traces.push_back(nlohmann::json{{"index", k}, {"graph6", to_graph6(g)}, {"status", "indeterminate"}}.dump());
        continue;
      }
      const Decomposition canon = decompose(g, tr.triple, std::nullopt, o.t2_rule);
      const Decomposition shuffled = decompose(g, tr.triple, derive_seed(o.seed, g.order(), k), o.t2_rule);
      const std::vector<LemmaReport> a = scan_reports(g, canon), b = scan_reports(g, shuffled);
      if (s.tallies.empty())
        for (const LemmaReport& r : a) s.tallies.push_back({r.id, r.asserted, 0, 0});
      nlohmann::json violated = nlohmann::json::array(), sensitive = nlohmann::json::array();
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].guard_satisfied) ++s.tallies[j].guarded;
        for (const LemmaReport* r : {&a[j], &b[j]})
          if (r->violated()) {
            ++s.tallies[j].violations;
            ++s.violations;
            violated.push_back(r->id);
            if (s.violation_examples.size() < o.max_examples)
              s.violation_examples.push_back({{"index", k},
                                              {"graph6", to_graph6(g)},
                                              {"peeling", r == &a[j] ? "canonical" : "shuffled"},
                                              {"report", to_json(*r)}});
          }
        if (a[j].asserted && a[j].verdict() != b[j].verdict()) sensitive.push_back(a[j].id);
      }
      if (!sensitive.empty()) {
        ++s.sensitive_instances;
        if (s.sensitivity_examples.size() < o.max_examples)
          s.sensitivity_examples.push_back(
              {{"index", k}, {"graph6", to_graph6(g)}, {"ids", sensitive}, {"canonical", to_json(canon.stats)},
               {"shuffled", to_json(shuffled.stats)}});
      } else if (!(canon.stats == shuffled.stats)) {
        ++s.value_changes;
      }
      if (o.keep_traces)
        s.traces.push_back(nlohmann::json{{"index", k},
                                          {"graph6", to_graph6(g)},
                                          {"stats", to_json(canon.stats)},
                                          {"shuffled_stats", to_json(shuffled.stats)},
                                          {"violated", violated},
                                          {"sensitive", sensitive}}
                               .dump());
    }
  });

  ScanSummary out;
  out.options = o;
  for (ScanSummary& p : parts) {
    out.instances += p.instances;
    out.indeterminate += p.indeterminate;
    out.violations += p.violations;
    out.sensitive_instances += p.sensitive_instances;
    out.value_changes += p.value_changes;
    if (out.tallies.empty()) {
      out.tallies = p.tallies;
    } else {
      for (std::size_t j = 0; j < p.tallies.size(); ++j) {
        out.tallies[j].guarded += p.tallies[j].guarded;
        out.tallies[j].violations += p.tallies[j].violations;
      }
    }
    for (auto& e : p.violation_examples)
      if (out.violation_examples.size() < o.max_examples) out.violation_examples.push_back(std::move(e));
    for (auto& e : p.sensitivity_examples)
      if (out.sensitivity_examples.size() < o.max_examples) out.sensitivity_examples.push_back(std::move(e));
    for (auto& t : p.traces) out.traces.push_back(std::move(t));
  }
  return out;
}

inline nlohmann::json to_json(const ScanSummary& s) {
  nlohmann::json tallies = nlohmann::json::array();
  for (const LemmaTally& t : s.tallies)
    tallies.push_back({{"id", t.id}, {"asserted", t.asserted}, {"guarded", t.guarded}, {"violations", t.violations}});
  nlohmann::json opts = {{"mode", to_string(s.options.mode)}, {"n_max", s.options.n_max}, {"seed", s.options.seed}};
  if (s.options.mode == ScanMode::random) {
    opts["n_min"] = s.options.n_min;
    opts["samples"] = s.options.samples;
  }
  return {{"options", opts},
          {"instances", s.instances},
          {"indeterminate", s.indeterminate},
          {"violations", s.violations},
          {"sensitive_instances", s.sensitive_instances},
          {"peeling_value_changes", s.value_changes},
          {"tallies", tallies},
          {"violation_examples", s.violation_examples},
          {"sensitivity_examples", s.sensitivity_examples}};
}

// ---------------------------------------------------------------------------
// Exhaustive check of the minimum-degree bipartiteness theorem.

struct AesScanSummary {
  int n_max = 0;
  std::uint64_t graphs = 0;
  std::uint64_t guarded = 0;
  std::uint64_t counterexamples = 0;
  std::vector<std::string> counterexample_graph6;
};

/// Every labelled graph on 1..n_max vertices.
inline AesScanSummary aes_scan(int n_max, int workers = 1) {
  require(n_max >= 1 && n_max <= 8, "aes scan: n must lie in [1, 8]");
  AesScanSummary out;
  out.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    constexpr std::uint64_t kChunk = 1 << 14;
    const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
    std::vector<AesScanSummary> parts(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
      for (std::uint64_t k = c * kChunk; k < std::min(total, (c + 1) * kChunk); ++k) {
        const LemmaReport r = check_aes(detail::graph_from_mask(n, k));
        ++parts[c].graphs;
        if (!r.guard_satisfied) continue;
        ++parts[c].guarded;
        if (!r.holds) {
          ++parts[c].counterexamples;
          parts[c].counterexample_graph6.push_back(to_graph6(detail::graph_from_mask(n, k)));
        }
      }
    });
    for (AesScanSummary& p : parts) {
      out.graphs += p.graphs;
      out.guarded += p.guarded;
      out.counterexamples += p.counterexamples;
      for (auto& g6 : p.counterexample_graph6) out.counterexample_graph6.push_back(std::move(g6));
    }
  }
  return out;
}

inline nlohmann::json to_json(const AesScanSummary& s) {
  return {{"n_max", s.n_max},
          {"graphs", s.graphs},
          {"guarded", s.guarded},
          {"counterexamples", s.counterexamples},
          {"counterexample_graph6", s.counterexample_graph6}};
}

}  // namespace rch
