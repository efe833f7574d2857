#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rch/constructions.hpp"
#include "rch/fact_scan.hpp"
#include "rch/graph_io.hpp"
#include "rch/lemmas.hpp"
#include "rch/oracles.hpp"
#include "rch/scan.hpp"
#include "rch/suites.hpp"

namespace rch::cli {

enum ExitCode { kExitOk = 0, kExitViolation = 1, kExitIndeterminate = 2, kExitUsage = 3 };

inline constexpr const char* kOutputDirEnv = "RCH_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "rch-output";

/// Settings shared by every subcommand. A JSON config file may set any key;
/// flags given on the command line win.
struct RunConfig {
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::string output_path;
  bool emit_traces = false;
  bool json = false;
  std::string t2_rule = "singletons";
  int ar_max_n = kArOracleDefaultMaxN;
  int ex_max_n = kMaxVertices;
  std::string checkpoint;
  bool force_bb = false;
  int points = 10'000;
  long long fact_n_min = kFactAssertMinN;
  long long fact_n_max = 10'000;
  std::uint64_t fact_samples = 100'000;
  bool fact_exhaustive = false;
  int scan_n_min = 7;
};

/// What a subcommand produced. `status` is ok, violation or indeterminate.
struct Outcome {
  std::string status = "ok";
  nlohmann::json result = nlohmann::json::object();
  std::string summary;
  std::vector<std::pair<std::string, std::string>> files;  // extra outputs: name, content
};

inline int exit_code(const std::string& status) {
  if (status == "violation") return kExitViolation;
  if (status == "indeterminate") return kExitIndeterminate;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Input files.

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Text edge list, or a graph6 string when the file does not start with a digit.
inline Graph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError(path + ": empty graph file");
  try {
    return std::isdigit(static_cast<unsigned char>(text[first])) ? parse_graph_text(text)
                                                                 : from_graph6(text.substr(first));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline EdgeColoring load_coloring(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return coloring_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <int W>
std::string graph_text(const BasicGraph<W>& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (const Edge& e : edges(g)) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

inline T2Rule parse_t2_rule(const std::string& s) {
  if (s == "singletons") return T2Rule::singletons;
  if (s == "triangles") return T2Rule::triangles;
  throw InputError("t2 rule must be singletons or triangles, got " + s);
}

inline std::string params(const std::string& f, long long n, long long t) {
  return f + "(" + std::to_string(n) + "," + std::to_string(t) + ")";
}

// ---------------------------------------------------------------------------
// Subcommands.

inline Outcome cmd_construct(const RunConfig&, const std::string& family, long long n, long long t) {
  const ConstructionSpec s(parse_family(family), n, t);
  const BasicPartedGraph<4> pg = build_construction<4>(s);
  const long built = edge_count(pg.graph);
  const BigInt closed = closed_form_edge_count(s);
  Outcome o;
  o.result = to_json(pg);
  o.result["family"] = to_string(s.family);
  o.result["t"] = t;
  o.result["closed_form"] = to_string(closed);
  if (n <= kMaxVertices) o.result["graph6"] = to_graph6(build_construction<2>(s).graph);
  if (BigInt(built) != closed) o.status = "violation";
  o.summary = params(to_string(s.family), n, t) + ": " + std::to_string(n) + " vertices, " + std::to_string(built) +
              " edges (closed form " + to_string(closed) + ")";
  o.files.emplace_back(to_string(s.family) + "_" + std::to_string(n) + "_" + std::to_string(t) + ".graph",
                       graph_text(pg.graph));
  return o;
}

inline Outcome cmd_color(const RunConfig&, const std::string& family, long long n, long long t) {
  const ConstructionSpec s(parse_family(family), n, t);
  require(is_valid(s), "color: " + params(to_string(s.family), n, t) + " is not a valid construction");
  const EdgeColoring c = build_lower_bound_coloring(s);
  Outcome o;
  o.result = {{"family", to_string(s.family)}, {"n", n}, {"t", t}, {"num_colors", c.num_colors()},
              {"coloring", to_json(c)}};
  o.summary = params(to_string(s.family), n, t) + " lower-bound coloring: " + std::to_string(c.num_colors()) +
              " colors on " + std::to_string(pair_count(c.order())) + " pairs";
  o.files.emplace_back(to_string(s.family) + "_" + std::to_string(n) + "_" + std::to_string(t) + ".coloring.json",
                       to_json(c).dump() + "\n");
  return o;
}

inline Outcome cmd_tile(const RunConfig& cfg, const std::string& path) {
  const Graph g = load_graph(path);
  const TripleResult r = maximal_tiling_triple(g, cfg.node_budget);
  Outcome o;
  o.result = {{"n", g.order()}, {"edges", edge_count(g)}, {"graph6", to_graph6(g)},
              {"status", std::string(to_string(r.status))}, {"nodes", r.nodes}};
  if (r.status == SearchStatus::indeterminate) {
    o.status = "indeterminate";
    o.summary = "tiling search ran out of budget after " + std::to_string(r.nodes) + " nodes";
    return o;
  }
  o.result["tiling_number"] = r.triple.triangles.size();
  o.result["matching_size"] = r.triple.matching.size();
  o.result["singletons"] = r.triple.singletons.size();
  o.result["triple"] = to_json(r.triple);
  o.summary = "maximal tiling triple: " + std::to_string(r.triple.triangles.size()) + " triangles, " +
              std::to_string(r.triple.matching.size()) + " matching edges, " +
              std::to_string(r.triple.singletons.size()) + " singletons";
  return o;
}

inline Outcome cmd_partition(const RunConfig& cfg, const std::string& path) {
  const Graph g = load_graph(path);
  const TripleResult r = maximal_tiling_triple(g, cfg.node_budget);
  Outcome o;
  o.result = {{"n", g.order()}, {"edges", edge_count(g)}, {"graph6", to_graph6(g)}, {"t2_rule", cfg.t2_rule}};
  if (r.status == SearchStatus::indeterminate) {
    o.status = "indeterminate";
    o.summary = "tiling search ran out of budget after " + std::to_string(r.nodes) + " nodes";
    return o;
  }
  const Decomposition d = decompose(g, r.triple, std::nullopt, parse_t2_rule(cfg.t2_rule));
  const std::vector<LemmaReport> reports = scan_reports(g, d);
  int violated = 0;
  nlohmann::json ids = nlohmann::json::array();
  for (const LemmaReport& rep : reports)
    if (rep.violated()) {
      ++violated;
      ids.push_back(rep.id);
    }
  if (violated) o.status = "violation";
  o.result["triple"] = to_json(r.triple);
  o.result["partition"] = to_json(d.partition);
  o.result["stats"] = to_json(d.stats);
  o.result["reports"] = to_json(reports);
  o.result["violated"] = ids;
  const PartitionStats& s = d.stats;
  o.summary = "ideal partition (t1,t2,t3,t4,m,i) = (" + std::to_string(s.tau1) + "," + std::to_string(s.tau2) + "," +
              std::to_string(s.tau3) + "," + std::to_string(s.tau4) + "," + std::to_string(s.mu) + "," +
              std::to_string(s.iota) + "); " + std::to_string(reports.size()) + " bounds checked, " +
              std::to_string(violated) + " violated";
  o.files.emplace_back(std::filesystem::path(path).stem().string() + "_profile.csv", d.profile.to_csv());
  return o;
}

inline Outcome cmd_formula(const RunConfig&, const std::string& name, const std::vector<std::string>& raw) {
  std::vector<long long> a;
  for (const std::string& s : raw) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    require(pos == s.size() && !s.empty(), "formula: argument " + s + " is not an integer");
    a.push_back(v);
  }
  auto arity = [&](std::size_t k, const char* shape) {
    require(a.size() == k, "formula " + name + " takes " + shape);
  };
  auto stats = [&](std::size_t off) { return PartitionStats{a[off], a[off + 1], a[off + 2], a[off + 3], a[off + 4], a[off + 5]}; };
  Outcome o;
  o.result = {{"name", name}, {"args", a}};
  std::string value;
  if (name == "f" || name == "h" || name == "g" || name == "q1") {
    arity(6, "t1 t2 t3 t4 m i");
    const PartitionStats s = stats(0);
    const BigInt v = name == "f" ? poly_f(s) : name == "h" ? poly_h(s) : name == "g" ? poly_g(s) : poly_q1(s);
    value = to_string(v);
  } else if (name == "identity") {
    arity(8, "id t1 t2 t3 t4 m i x");
    require(a[0] >= 1 && a[0] <= kIdentityCount, "formula identity: id must lie in [1, 8]");
    const IdentityVerdict v = check_identity(static_cast<int>(a[0]), stats(1), a[7]);
    o.result["lhs"] = to_string(v.lhs);
    o.result["rhs"] = to_string(v.rhs);
    o.result["holds"] = v.holds;
    if (!v.holds) o.status = "violation";
    value = v.holds ? "holds" : "fails";
  } else if (name == "t4-threshold") {
    arity(1, "t4");
    value = std::to_string(t4_sparse_threshold(a[0]));
  } else if (name == "xi" || name == "ex") {
    arity(2, "n t");
    const PiecewiseResult r = name == "xi" ? xi_piecewise({a[0], a[1]}) : ex_abhp({a[0], a[1]});
    o.result["branches"] = r.branches;
    o.result["tie"] = r.tie;
    if (!r.note.empty()) o.result["note"] = r.note;
    value = to_string(r.value);
  } else if (name == "ar") {
    arity(2, "n t");
    const AntiRamseyValue r = ar_first_interval({a[0], a[1]});
    o.result["within_hypothesis"] = r.within_hypothesis;
    value = to_string(r.value);
  } else if (name == "xi-built") {
    arity(2, "n t");
    value = std::to_string(xi_from_constructions({a[0], a[1]}));
  } else {
    static const std::map<std::string, Family> closed = {{"e1", Family::E1}, {"e2", Family::E2}, {"e3", Family::E3},
                                                         {"e4", Family::E4}, {"e5", Family::E5}, {"gamma3", Family::G3},
                                                         {"gamma4", Family::G4}};
    const auto it = closed.find(name);
    require(it != closed.end(), "formula: unknown name " + name +
                                    " (expected f, h, g, q1, identity, t4-threshold, xi, xi-built, ex, ar, e1..e5, "
                                    "gamma3, gamma4)");
    arity(2, "n t");
    const ConstructionSpec s(it->second, a[0], a[1]);
    o.result["valid"] = is_valid(s);
    value = to_string(closed_form_edge_count(s));
  }
  o.result["value"] = value;
  std::string args;
  for (const std::string& s : raw) args += (args.empty() ? "" : ",") + s;
  o.summary = name + "(" + args + ") = " + value;
  return o;
}

inline Outcome cmd_identity_check(const RunConfig& cfg) {
  const IdentitySuiteResult r = identity_suite(cfg.points, cfg.seed);
  Outcome o;
  o.result = to_json(r);
  if (!r.holds()) o.status = "violation";
  int failures = 0;
  for (int f : r.failures) failures += f;
  o.summary = std::to_string(kIdentityCount) + " identities x " + std::to_string(cfg.points) + " points: " +
              (r.holds() ? "all hold" : std::to_string(failures) + " failures");
  return o;
}

inline Outcome cmd_fact_scan(const RunConfig& cfg, const std::string& fact) {
  FactScanOptions fo;
  fo.facts = parse_facts(fact);
  fo.n_min = cfg.fact_n_min;
  fo.n_max = cfg.fact_n_max;
  fo.samples = cfg.fact_samples;
  fo.exhaustive = cfg.fact_exhaustive;
  fo.seed = cfg.seed;
  fo.workers = cfg.workers;
  const FactScanReport r = scan_fact_inequalities(fo);
  Outcome o;
  o.result = to_json(r);
  if (!r.clean()) o.status = "violation";
  for (const FactTally& t : r.tallies) {
    if (!o.summary.empty()) o.summary += "\n";
    o.summary += "fact " + to_string(t.fact) + ": " + std::to_string(t.tuples) + " tuples, " +
                 std::to_string(t.violations) + " violations, " + std::to_string(t.informational_violations) +
                 " informational";
  }
  return o;
}

inline Outcome cmd_rainbow(const RunConfig& cfg, const std::string& path, int s) {
  const EdgeColoring c = load_coloring(path);
  const RainbowSearchResult r = find_rainbow_tiling(c, s, cfg.node_budget);
  Outcome o;
  o.result = {{"n", c.order()}, {"num_colors", c.num_colors()}, {"s", s}, {"found", r.found()},
              {"status", std::string(to_string(r.status))}, {"nodes", r.nodes}};
  o.result["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json();
  if (r.found())
    o.summary = "rainbow " + std::to_string(s) + "K3 found";
  else if (r.proved_absent())
    o.summary = "no rainbow " + std::to_string(s) + "K3 (search complete)";
  else {
    o.status = "indeterminate";
    o.summary = "rainbow search ran out of budget after " + std::to_string(r.nodes) + " nodes";
  }
  return o;
}

inline Outcome cmd_ar_oracle(const RunConfig& cfg, int n, int s) {
  ArOracleOptions ao;
  ao.node_budget = cfg.node_budget;
  ao.workers = cfg.workers;
  ao.max_n = cfg.ar_max_n;
  if (!cfg.checkpoint.empty()) ao.checkpoint = cfg.checkpoint;
  const ArOracleResult r = ar_oracle(n, s, ao);
  Outcome o;
  o.result = to_json(r);
  o.result["n"] = n;
  o.result["s"] = s;
  if (r.status == SearchStatus::indeterminate) {
    o.status = "indeterminate";
    o.summary = "ar(" + std::to_string(n) + ", " + std::to_string(s) + "K3) undecided within budget; best " +
                std::to_string(r.best_colors) + " colors without a rainbow copy";
    return o;
  }
  const Sandwich w = ar_sandwich(n, s, cfg.node_budget);
  o.result["sandwich"] = {w.lower, w.upper};
  const bool inside = w.lower <= r.value && r.value <= w.upper;
  bool witness_ok = true;
  if (r.witness) {
    witness_ok = find_rainbow_tiling(*r.witness, s, cfg.node_budget).proved_absent();
    o.files.emplace_back("ar_" + std::to_string(n) + "_" + std::to_string(s) + ".coloring.json",
                         to_json(*r.witness).dump() + "\n");
  }
  o.result["witness_verified"] = witness_ok;
  if (!inside || !witness_ok) o.status = "violation";
  o.summary = "ar(" + std::to_string(n) + ", " + std::to_string(s) + "K3) = " + std::to_string(r.value) +
              ", sandwich [" + std::to_string(w.lower) + ", " + std::to_string(w.upper) + "]";
  return o;
}

inline Outcome cmd_ex_oracle(const RunConfig& cfg, int n, int s) {
  require(n <= cfg.ex_max_n, "ex oracle: n exceeds the configured limit " + std::to_string(cfg.ex_max_n));
  const ExOracleResult r = ex_oracle(n, s, cfg.node_budget, cfg.force_bb);
  Outcome o;
  o.result = to_json(r);
  o.result["n"] = n;
  o.result["s"] = s;
  if (n >= 3 && s >= 1 && 3 * (s - 1) <= n) {
    try {
      o.result["closed_form"] = to_string(ex_abhp({n, s - 1}).value);
    } catch (const InputError&) {
    }
  }
  const std::string head = "ex(" + std::to_string(n) + ", " + std::to_string(s) + "K3)";
  if (r.status == SearchStatus::indeterminate) {
    o.status = "indeterminate";
    o.summary = head + " in [" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "], budget exhausted";
    return o;
  }
  o.summary = head + " = " + std::to_string(r.value);
  o.files.emplace_back("ex_" + std::to_string(n) + "_" + std::to_string(s) + ".graph", graph_text(r.witness));
  return o;
}

inline Outcome cmd_verify_construction(const RunConfig& cfg, const std::string& family, long long n, long long t) {
  const ConstructionSpec s(parse_family(family), n, t);
  require(is_valid(s), "verify-construction: " + params(to_string(s.family), n, t) + " is not valid");
  const BasicPartedGraph<4> pg = build_construction<4>(s);
  Outcome o;
  bool ok = true, undecided = false;
  const bool closed = BigInt(edge_count(pg.graph)) == closed_form_edge_count(s);
  const bool regen = regenerates(s, pg);
  ok = closed && regen;
  o.result = {{"family", to_string(s.family)}, {"n", n}, {"t", t}, {"edges", edge_count(pg.graph)},
              {"closed_form_matches", closed}, {"regenerates", regen}};
  std::string line = params(to_string(s.family), n, t) + ": closed form " + (closed ? "ok" : "MISMATCH") +
                     ", regeneration " + (regen ? "ok" : "MISMATCH");
  if (n <= kMaxVertices) {
    const TilingResult tr = max_tiling_of_construction(s, cfg.node_budget);
    const long long cap = is_e_family(s.family) ? t + 1 : t;
    o.result["tiling_status"] = std::string(to_string(tr.status));
    if (tr.status == SearchStatus::complete) {
      o.result["tiling_number"] = tr.size;
      o.result["tiling_cap"] = cap;
      ok = ok && tr.size <= cap;
      line += ", tiling " + std::to_string(tr.size) + (tr.size <= cap ? " <= " : " > ") + std::to_string(cap);
    } else {
      undecided = true;
      line += ", tiling undecided";
    }
    if (is_e_family(s.family)) {
      const ColoringVerdict v = verify_lower_bound_coloring(s, cfg.node_budget);
      o.result["coloring_status"] = std::string(to_string(v.status));
      o.result["rainbow_free"] = v.rainbow_free;
      if (v.witness) o.result["rainbow_witness"] = to_json(*v.witness);
      if (v.status == SearchStatus::complete) {
        ok = ok && v.rainbow_free;
        line += std::string(", coloring ") + (v.rainbow_free ? "rainbow-free" : "HAS a rainbow copy");
      } else {
        undecided = true;
        line += ", coloring undecided";
      }
    }
  } else {
    o.result["note"] = "tiling and coloring checks need n <= 128";
  }
  o.status = !ok ? "violation" : undecided ? "indeterminate" : "ok";
  o.summary = line;
  return o;
}

inline Outcome cmd_scan(const RunConfig& cfg, const std::string& mode, int n, std::uint64_t samples) {
  ScanOptions so;
  so.mode = parse_scan_mode(mode);
  so.n_max = n;
  so.n_min = std::min(cfg.scan_n_min, n);
  so.samples = samples;
  so.seed = cfg.seed;
  so.workers = cfg.workers;
  so.node_budget = cfg.node_budget;
  so.keep_traces = cfg.emit_traces;
  so.t2_rule = parse_t2_rule(cfg.t2_rule);
  const ScanSummary r = scan_for_counterexamples(so);
  Outcome o;
  o.result = to_json(r);
  o.result["options"]["t2_rule"] = cfg.t2_rule;
  if (r.violations || r.sensitive_instances)
    o.status = "violation";
  else if (r.indeterminate)
    o.status = "indeterminate";
  o.summary = to_string(so.mode) + " scan: " + std::to_string(r.instances) + " graphs, " +
              std::to_string(r.violations) + " violations, " + std::to_string(r.sensitive_instances) +
              " peeling-sensitive, " + std::to_string(r.indeterminate) + " indeterminate";
  if (cfg.emit_traces) {
    std::string lines;
    for (const std::string& t : r.traces) lines += t + "\n";
    o.files.emplace_back("scan_traces.jsonl", lines);
  }
  return o;
}

/// Collects every subcommand result in the output directory.
inline Outcome cmd_report(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  if (fs::exists(cfg.output_path))
    for (const auto& e : fs::directory_iterator(cfg.output_path))
      if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename() != "report.json")
        paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  nlohmann::json entries = nlohmann::json::array();
  std::map<std::string, int> counts{{"ok", 0}, {"violation", 0}, {"indeterminate", 0}};
  std::string csv = "file,command,status\n";
  for (const fs::path& p : paths) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(p.string()));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j.contains("status")) continue;
    const std::string status = j["status"].get<std::string>();
    ++counts[status];
    entries.push_back({{"file", p.filename().string()}, {"command", j["command"]}, {"args", j["args"]}, {"status", status}});
    csv += p.filename().string() + "," + j["command"].get<std::string>() + "," + status + "\n";
  }
  Outcome o;
  o.result = {{"entries", entries}, {"counts", counts}};
  if (counts["violation"])
    o.status = "violation";
  else if (counts["indeterminate"])
    o.status = "indeterminate";
  o.summary = std::to_string(entries.size()) + " results: " + std::to_string(counts["ok"]) + " ok, " +
              std::to_string(counts["violation"]) + " violation, " + std::to_string(counts["indeterminate"]) +
              " indeterminate";
  o.files.emplace_back("report.csv", csv);
  return o;
}

// ---------------------------------------------------------------------------
// Dispatch.

inline std::string file_stem(const std::string& command, const std::vector<std::string>& args) {
  std::string out = command;
  for (const std::string& a : args) {
    const std::filesystem::path path(a);
    std::string part = std::filesystem::is_regular_file(path) ? path.stem().string() : a;
    for (char& c : part)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '-';
    out += "_" + part;
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

/// Parses argv, runs one subcommand and writes its outputs. Returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_path;
  CLI::App app{"Exact tools for rainbow triangle tilings and their extremal constructions", "rch"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::pair<CLI::Option*, std::function<void(const nlohmann::json&)>>> keys;
  auto bind = [&](const std::string& key, CLI::Option* opt, auto& field) {
    keys[key] = {opt, [&field](const nlohmann::json& v) { field = v.get<std::remove_reference_t<decltype(field)>>(); }};
  };
  bind("seed", app.add_option("--seed", cfg.seed, "Seed for every random stream"), cfg.seed);
  bind("workers", app.add_option("--workers", cfg.workers, "Worker threads"), cfg.workers);
  bind("budget", app.add_option("--budget", cfg.node_budget, "Node budget for exhaustive searches"), cfg.node_budget);
  bind("out", app.add_option("--out", cfg.output_path, "Output directory (default $RCH_OUTPUT_DIR or rch-output)"),
       cfg.output_path);
  bind("traces", app.add_flag("--traces", cfg.emit_traces, "Write per-instance scan traces"), cfg.emit_traces);
  bind("json", app.add_flag("--json", cfg.json, "Print the JSON result instead of a summary"), cfg.json);
  bind("t2_rule", app.add_option("--t2-rule", cfg.t2_rule, "Second-class rule: singletons or triangles"), cfg.t2_rule);
  app.add_option("--config", config_path, "JSON object of settings; flags win");

  std::string command;
  std::vector<std::string> args;
  std::function<Outcome()> action;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };

  std::string family, file, name, mode;
  long long n = 0, t = 0;
  int s_arg = 0;
  std::uint64_t samples = 0;
  std::vector<std::string> formula_args;

  for (const char* c : {"construct", "color", "verify-construction"}) {
    CLI::App* s = sub(c, c == std::string("construct") ? "Build a construction and write its graph"
                         : c == std::string("color") ? "Write the lower-bound coloring of a construction"
                                                     : "Check a construction against every available test");
    s->add_option("family", family, "E1..E5 or G1..G4")->required();
    s->add_option("n", n, "Vertex count")->required();
    s->add_option("t", t, "Parameter t")->required();
  }
  for (const char* c : {"tile", "partition"}) {
    CLI::App* s = sub(c, c == std::string("tile") ? "Maximal tiling triple of a graph file"
                                                   : "Ideal partition, edge profile and bound checks of a graph file");
    s->add_option("graph-file", file, "Edge list or graph6")->required();
  }
  {
    CLI::App* s = sub("formula", "Evaluate a formula");
    s->add_option("name", name, "f, h, g, q1, identity, t4-threshold, xi, xi-built, ex, ar, e1..e5, gamma3, gamma4")
        ->required();
    s->add_option("args", formula_args, "Integer arguments");
  }
  bind("points", sub("identity-check", "Shift identities at random points")
                     ->add_option("--points", cfg.points, "Points per identity"),
       cfg.points);
  {
    CLI::App* s = sub("fact-scan", "Sample or enumerate the fact inequalities");
    s->add_option("fact", name, "2.2a, 2.2b, 2.3, 4.1, 4.2 or all")->required();
    bind("fact_n_min", s->add_option("--n-min", cfg.fact_n_min, "Smallest n"), cfg.fact_n_min);
    bind("fact_n_max", s->add_option("--n-max", cfg.fact_n_max, "Largest n"), cfg.fact_n_max);
    bind("fact_samples", s->add_option("--samples", cfg.fact_samples, "Samples per fact"), cfg.fact_samples);
    bind("fact_exhaustive", s->add_flag("--exhaustive", cfg.fact_exhaustive, "Every admissible tuple"),
         cfg.fact_exhaustive);
  }
  {
    CLI::App* s = sub("rainbow", "Search a coloring file for a rainbow sK3");
    s->add_option("coloring-file", file, "JSON coloring")->required();
    s->add_option("s", s_arg, "Number of triangles")->required();
  }
  {
    CLI::App* s = sub("ar-oracle", "Exact anti-Ramsey number by exhaustive search");
    s->add_option("n", n, "Vertex count")->required();
    s->add_option("s", s_arg, "Number of triangles")->required();
    bind("checkpoint", s->add_option("--checkpoint", cfg.checkpoint, "Resumable checkpoint file"), cfg.checkpoint);
    bind("ar_max_n", s->add_option("--max-n", cfg.ar_max_n, "Largest n accepted"), cfg.ar_max_n);
  }
  {
    CLI::App* s = sub("ex-oracle", "Exact Turan number of sK3");
    s->add_option("n", n, "Vertex count")->required();
    s->add_option("s", s_arg, "Number of triangles")->required();
    bind("force_bb", s->add_flag("--branch-and-bound", cfg.force_bb, "Skip full enumeration"), cfg.force_bb);
    bind("ex_max_n", s->add_option("--max-n", cfg.ex_max_n, "Largest n accepted"), cfg.ex_max_n);
  }
  {
    CLI::App* s = sub("scan", "Check the lemma bounds on many graphs");
    s->add_option("mode", mode, "exhaustive or random")->required();
    s->add_option("n", n, "Vertex count (largest, in random mode)")->required();
    s->add_option("samples", samples, "Random graphs (ignored when exhaustive)");
    bind("scan_n_min", s->add_option("--n-min", cfg.scan_n_min, "Smallest n in random mode"), cfg.scan_n_min);
  }
  sub("report", "Summarize every result in the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(config_path + ": " + e.what());
      }
      if (!j.is_object()) throw ParseError(config_path + ": config must be a JSON object");
      for (const auto& [k, v] : j.items()) {
        const auto it = keys.find(k);
        if (it == keys.end()) throw ParseError(config_path + ": unknown key " + k);
        if (it->second.first->count() > 0) continue;
        try {
          it->second.second(v);
        } catch (const nlohmann::json::exception&) {
          throw ParseError(config_path + ": bad value for " + k);
        }
      }
    }
    require(cfg.workers >= 1, "worker count must be at least 1");
    require(cfg.node_budget >= 1, "node budget must be positive");
    if (cfg.output_path.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      cfg.output_path = env && *env ? env : kDefaultOutputDir;
    }

    Outcome o;
    if (command == "construct") {
      args = {family, std::to_string(n), std::to_string(t)};
      o = cmd_construct(cfg, family, n, t);
    } else if (command == "color") {
      args = {family, std::to_string(n), std::to_string(t)};
      o = cmd_color(cfg, family, n, t);
    } else if (command == "verify-construction") {
      args = {family, std::to_string(n), std::to_string(t)};
      o = cmd_verify_construction(cfg, family, n, t);
    } else if (command == "tile") {
      args = {file};
      o = cmd_tile(cfg, file);
    } else if (command == "partition") {
      args = {file};
      o = cmd_partition(cfg, file);
    } else if (command == "formula") {
      args = formula_args;
      args.insert(args.begin(), name);
      o = cmd_formula(cfg, name, formula_args);
    } else if (command == "identity-check") {
      o = cmd_identity_check(cfg);
    } else if (command == "fact-scan") {
      args = {name};
      o = cmd_fact_scan(cfg, name);
    } else if (command == "rainbow") {
      args = {file, std::to_string(s_arg)};
      o = cmd_rainbow(cfg, file, s_arg);
    } else if (command == "ar-oracle") {
      args = {std::to_string(n), std::to_string(s_arg)};
      require(n >= 1 && n <= kMaxVertices, "ar oracle: n must lie in [1, 128]");
      o = cmd_ar_oracle(cfg, static_cast<int>(n), s_arg);
    } else if (command == "ex-oracle") {
      args = {std::to_string(n), std::to_string(s_arg)};
      require(n >= 1 && n <= kMaxVertices, "ex oracle: n must lie in [1, 128]");
      o = cmd_ex_oracle(cfg, static_cast<int>(n), s_arg);
    } else if (command == "scan") {
      args = {mode, std::to_string(n), std::to_string(samples)};
      require(n >= 1 && n <= kRandomScanMaxN, "scan: n must lie in [1, 16]");
      require(parse_scan_mode(mode) == ScanMode::exhaustive || samples >= 1, "scan: random mode needs samples >= 1");
      o = cmd_scan(cfg, mode, static_cast<int>(n), samples);
    } else if (command == "report") {
      o = cmd_report(cfg);
    }

    nlohmann::json doc = {{"command", command},
                          {"args", args},
                          {"seed", cfg.seed},
                          {"node_budget", cfg.node_budget},
                          {"status", o.status},
                          {"result", o.result}};
    const std::filesystem::path dir(cfg.output_path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    const std::string stem = command == "report" ? "report" : file_stem(command, args);
    write_file(dir / (stem + ".json"), doc.dump(2) + "\n");
    for (const auto& [fname, content] : o.files) write_file(dir / fname, content);

    if (cfg.json)
      out << doc.dump(2) << "\n";
    else
      out << o.summary << "\n" << "status: " << o.status << "\nwrote " << (dir / (stem + ".json")).string() << "\n";
    return exit_code(o.status);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace rch::cli
