#include <gtest/gtest.h>

#include "rch/constructions.hpp"
#include "rch/lemmas.hpp"
#include "rch/scan.hpp"

using namespace rch;

namespace {

Graph from_edges(int n, std::initializer_list<std::pair<int, int>> es) {
  GraphBuilder b(n);
  for (auto [u, v] : es) b.add_edge(u, v);
  return b.build();
}

const LemmaReport& find(const std::vector<LemmaReport>& rs, const std::string& id) {
  for (const LemmaReport& r : rs)
    if (r.id == id) return r;
  throw std::runtime_error("no report " + id);
}

Decomposition maximal(const Graph& g) { return decompose(g, maximal_tiling_triple(g).triple); }

// Thirteen triangles (3j, 3j+1, 3j+2) and five matching edges (39+2k, 40+2k)
// joined to every 3j, with K_{3,8,8} planted on {0,3,6}, {u_k} + {1,4,7},
// {v_k} + {10,13,16}.
struct Planted {
  Graph g{0};
  TilingTriple triple;
};

Planted planted_tripartite(bool drop_one) {
  GraphBuilder b(49);
  Planted p;
  for (int j = 0; j < 13; ++j) {
    b.add_edge(3 * j, 3 * j + 1).add_edge(3 * j, 3 * j + 2).add_edge(3 * j + 1, 3 * j + 2);
    p.triple.triangles.emplace_back(3 * j, 3 * j + 1, 3 * j + 2);
  }
  VertexSet a{0, 3, 6}, bs{1, 4, 7}, cs{10, 13, 16};
  for (int k = 0; k < 5; ++k) {
    const int u = 39 + 2 * k, v = 40 + 2 * k;
    b.add_edge(u, v);
    p.triple.matching.emplace_back(u, v);
    for (int j = 0; j < 13; ++j) b.add_edge(u, 3 * j).add_edge(v, 3 * j);
    bs.insert(u);
    cs.insert(v);
  }
  b.add_complete_bipartite(a, bs | cs).add_complete_bipartite(bs, cs);
  if (drop_one) b.remove_edge(0, 4);
  p.g = b.build();
  return p;
}

}  // namespace

TEST(Appendix, Examples) {
  Graph g = from_edges(7, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {5, 6}, {0, 3}, {0, 4}, {0, 5}, {0, 6}});
  TilingTriple tr{{Triangle(0, 1, 2)}, {Edge(3, 4), Edge(5, 6)}, {}};
  std::vector<LemmaReport> rs = check_appendix_bounds(g, decompose(g, tr));
  const LemmaReport& d = find(rs, "A.1(d)");
  EXPECT_EQ(d.lhs, 4);
  EXPECT_EQ(d.rhs, 8);
  EXPECT_TRUE(d.holds);

  Graph two = from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  std::vector<LemmaReport> r2 = check_appendix_bounds(two, maximal(two));
  // e(T3) counts the six edges inside the two triangles, the 3t3 term of the bound
  const LemmaReport& i = find(r2, "A.1(i)");
  EXPECT_EQ(i.lhs, 6);
  EXPECT_EQ(i.rhs, 14);
  EXPECT_TRUE(i.holds);
}

TEST(Appendix, IndependentSingletonsOnMaximalTriples) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    GraphBuilder b(9);
    for (int u = 0; u < 9; ++u)
      for (int v = u + 1; v < 9; ++v)
        if (rng() % 2) b.add_edge(u, v);
    const Graph g = b.build();
    std::vector<LemmaReport> rs = check_appendix_bounds(g, maximal(g));
    EXPECT_EQ(find(rs, "A.1(a)").lhs, 0);
    for (const LemmaReport& r : rs) EXPECT_FALSE(r.violated()) << r.id << " " << to_graph6(g);
  }
}

TEST(Appendix, FixedShapeAndGuards) {
  Graph g = complete_graph(7);
  Decomposition d = maximal(g);
  std::vector<LemmaReport> rs = check_appendix_bounds(g, d);
  EXPECT_EQ(rs.size(), check_appendix_bounds(Graph(4), maximal(Graph(4))).size());
  EXPECT_EQ(find(rs, "A.1(f)").note, kA1fNote);
  // t1 = 0 here, so the t1 != 1 guard holds and the t2 = 1 refinement does not apply
  EXPECT_TRUE(find(rs, "A.2(a) j=2").guard_satisfied);
  EXPECT_FALSE(find(rs, "A.3(c) t2=1 full").guard_satisfied);
  EXPECT_FALSE(find(rs, "A.3(c) t2=1 sparse").asserted);
}

TEST(Global, Examples) {
  const Graph e1 = build_construction(ConstructionSpec{Family::E1, 9, 1}).graph;
  Decomposition d = maximal(e1);
  std::vector<LemmaReport> rs = check_global_bounds(e1, d);
  const LemmaReport& h = find(rs, "2.1");
  EXPECT_EQ(h.lhs, 24);
  EXPECT_EQ(h.rhs, Rational(poly_h(d.stats)));
  EXPECT_TRUE(h.holds);

  std::vector<LemmaReport> empty = check_global_bounds(Graph(6), maximal(Graph(6)));
  EXPECT_EQ(find(empty, "2.1").lhs, 0);
  EXPECT_EQ(find(empty, "2.1").rhs, 0);
  EXPECT_EQ(find(empty, "2.1").stats, (PartitionStats{0, 0, 0, 0, 0, 6}));

  // e(T4) = 0 exceeds the threshold -28 at t4 = 0, so the g-bound is not in force
  Graph two = from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  std::vector<LemmaReport> r2 = check_global_bounds(two, maximal(two));
  EXPECT_FALSE(find(r2, "2.4").guard_satisfied);
  EXPECT_TRUE(find(r2, "2.1").holds);
  EXPECT_FALSE(find(r2, "2.5(ii)").asserted);
  EXPECT_FALSE(find(r2, "2.5(iii)").asserted);
}

// Under the triangle-seeing rule for the second class, this 11-vertex graph
// has |H| = 50 > h = 49 on a maximal triple; the singleton rule gives h >= |H|.
TEST(Global, TriangleSeeingRuleBreaksTheBound) {
  const Graph g = from_graph6("Jz~|~n^~~z_");
  const TilingTriple tr = maximal_tiling_triple(g).triple;
  const LemmaReport lit = find(check_global_bounds(g, decompose(g, tr, std::nullopt, T2Rule::triangles)), "2.1");
  EXPECT_EQ(lit.lhs, 50);
  EXPECT_EQ(lit.rhs, 49);
  EXPECT_TRUE(lit.violated());
  EXPECT_FALSE(find(check_global_bounds(g, decompose(g, tr)), "2.1").violated());
}

TEST(Aes, Examples) {
  LemmaReport c5 = check_aes(cycle_graph(5));
  EXPECT_FALSE(c5.guard_satisfied);
  GraphBuilder k44(8);
  k44.add_complete_bipartite(VertexSet{0, 1, 2, 3}, VertexSet{4, 5, 6, 7});
  LemmaReport k = check_aes(k44.build());
  EXPECT_TRUE(k.guard_satisfied);
  EXPECT_TRUE(k.holds);
  EXPECT_FALSE(check_aes(petersen_graph()).guard_satisfied);
  EXPECT_FALSE(check_aes(complete_graph(5)).guard_satisfied);
}

TEST(Aes, ExhaustiveSmall) {
  AesScanSummary s = aes_scan(6);
  EXPECT_EQ(s.graphs, 1u + 2 + 8 + 64 + 1024 + 32768);
  EXPECT_EQ(s.guarded, 14u);  // K2, three C4, ten K3,3
  EXPECT_EQ(s.counterexamples, 0u);
  EXPECT_EQ(to_json(aes_scan(6, 3)).dump(), to_json(s).dump());
}

TEST(Stability, WindowsAtTheirEdges) {
  // n = 32, t = 3: 2n = 64 = 8^2, so m = 6 and i = 8 sit exactly on the excluded edges
  StabilityRecord r = stability_windows(32, 3, PartitionStats{2, 1, 1, 0, 6, 8});
  EXPECT_TRUE(r.t1_window.holds);
  EXPECT_TRUE(r.t1_window.at_boundary);
  EXPECT_FALSE(r.m_window.holds);
  EXPECT_TRUE(r.m_window.at_boundary);
  EXPECT_FALSE(r.i_window.holds);
  EXPECT_TRUE(r.i_window.at_boundary);

  StabilityRecord top = stability_windows(32, 3, PartitionStats{4, 0, 0, 0, 10, 0});
  EXPECT_TRUE(top.m_window.holds);
  EXPECT_TRUE(top.m_window.at_boundary);
  EXPECT_FALSE(stability_windows(32, 3, PartitionStats{4, 0, 0, 0, 11, 0}).m_window.holds);
  EXPECT_FALSE(stability_windows(32, 3, PartitionStats{5, 0, 0, 0, 7, 3}).t1_window.holds);
}

TEST(Stability, Precondition) {
  StabilityRecord r = check_stability_predicates(complete_graph(9), 1);
  EXPECT_FALSE(r.precondition_met);
  EXPECT_NE(r.precondition_note.find("edge count"), std::string::npos);
}

TEST(Stability, FirstFamilyPlusTwoEdges) {
  for (int t : {2, 4}) {
    PartedGraph pg = build_construction(ConstructionSpec{Family::E1, 60, t});
    GraphBuilder b(pg.graph);
    const std::vector<int> y = pg.part(Part::Y1).to_vector();
    b.add_edge(y[0], y[1]).add_edge(y[0], y[2]);
    StabilityRecord r = check_stability_predicates(b.build(), t);
    ASSERT_TRUE(r.precondition_met) << r.precondition_note;
    EXPECT_EQ(r.stats.triangles(), t + 1);
    EXPECT_EQ(r.stats.vertex_count(), 60);
    EXPECT_TRUE(r.all_hold());
  }
}

TEST(Representative, FirstFamilyColorings) {
  for (auto [n, t] : {std::pair{15, 1}, std::pair{18, 2}}) {
    RepresentativeCheck rc = check_representative_claims(build_lower_bound_coloring({Family::E1, n, t}), t);
    ASSERT_TRUE(rc.precondition_met());
    EXPECT_EQ(rc.reports.size(), 7u);
    for (const char* id : {"4.2", "4.5"}) {
      EXPECT_TRUE(find(rc.reports, id).asserted);
      EXPECT_TRUE(find(rc.reports, id).guard_satisfied);
      EXPECT_TRUE(find(rc.reports, id).holds) << id << " n=" << n;
    }
    for (const LemmaReport& r : rc.reports) EXPECT_FALSE(r.violated()) << r.id;
    EXPECT_FALSE(find(rc.reports, "4.1").asserted);
  }
  RepresentativeCheck k18 = check_representative_claims(build_lower_bound_coloring({Family::E1, 18, 2}), 2);
  EXPECT_TRUE(find(k18.reports, "4.3").guard_satisfied);
  EXPECT_LE(find(k18.reports, "4.3").lhs, 2);
}

TEST(Representative, RainbowColoringOnlyMeasures) {
  RepresentativeCheck rc = check_representative_claims(rainbow_coloring(9), 1);
  EXPECT_TRUE(rc.rainbow_found);
  EXPECT_FALSE(rc.precondition_met());
  for (const LemmaReport& r : rc.reports) EXPECT_FALSE(r.asserted) << r.id;
}

TEST(Tripartite, PlantedWitness) {
  Planted p = planted_tripartite(false);
  Decomposition d = decompose(p.g, p.triple);
  ASSERT_EQ(d.stats, (PartitionStats{13, 0, 0, 0, 5, 0}));
  TripartiteRecord r = check_tripartite(p.g, d, 12);
  EXPECT_FALSE(r.vacuous);
  EXPECT_EQ(r.na, 3);
  EXPECT_EQ(r.nbc, 8);
  ASSERT_TRUE(r.found());
  const Tripartite& w = *r.search.witness;
  EXPECT_EQ(w.a, (VertexSet{0, 3, 6}));
  EXPECT_EQ(w.b.size(), 8);
  EXPECT_EQ(w.c.size(), 8);
  for (int a : w.a)
    for (int x : w.b | w.c) EXPECT_TRUE(p.g.adjacent(a, x));
  for (int b : w.b)
    for (int c : w.c) EXPECT_TRUE(p.g.adjacent(b, c));
}

TEST(Tripartite, MissingEdgeIsNotFound) {
  Planted p = planted_tripartite(true);
  TripartiteRecord r = check_tripartite(p.g, decompose(p.g, p.triple), 12);
  EXPECT_FALSE(r.found());
  EXPECT_EQ(r.search.status, SearchStatus::complete);
}

TEST(Tripartite, VacuousForFewTriangles) {
  TripartiteRecord r = check_tripartite_theorem(build_lower_bound_coloring({Family::E1, 15, 1}), 1);
  EXPECT_TRUE(r.vacuous);
  EXPECT_FALSE(r.found());
}

TEST(Tripartite, AgreesWithBruteForceOnSmallGraphs) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    GraphBuilder b(8);
    for (int u = 0; u < 8; ++u)
      for (int v = u + 1; v < 8; ++v)
        if (rng() % 4 != 0) b.add_edge(u, v);
    const Graph g = b.build();
    const VertexSet a_pool{0, 1}, bc{2, 3, 4, 5, 6, 7};
    // brute force: a in a_pool, B and C disjoint pairs in bc
    auto complete = [&](int a, int mb, int mc) {
      for (int x = 0; x < 6; ++x) {
        if (((mb | mc) >> x & 1) && !g.adjacent(a, 2 + x)) return false;
        for (int y = 0; y < 6; ++y)
          if ((mb >> x & 1) && (mc >> y & 1) && !g.adjacent(2 + x, 2 + y)) return false;
      }
      return true;
    };
    bool want = false;
    for (int a : a_pool)
      for (int mb = 0; mb < 64; ++mb)
        for (int mc = 0; mc < 64; ++mc)
          if (__builtin_popcount(mb) == 2 && __builtin_popcount(mc) == 2 && !(mb & mc) && complete(a, mb, mc))
            want = true;
    EXPECT_EQ(find_complete_tripartite(g, a_pool, bc, 1, 2, 2).witness.has_value(), want) << to_graph6(g);
  }
}

TEST(Scan, ExhaustiveFive) {
  ScanOptions o;
  o.mode = ScanMode::exhaustive;
  o.n_max = 5;
  ScanSummary s = scan_for_counterexamples(o);
  EXPECT_EQ(s.instances, 1024u);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_EQ(s.sensitive_instances, 0u);
  EXPECT_TRUE(s.clean());
}

TEST(Scan, ExhaustiveSix) {
  ScanOptions o;
  o.mode = ScanMode::exhaustive;
  o.n_max = 6;
  ScanSummary s = scan_for_counterexamples(o);
  EXPECT_EQ(s.instances, 32768u);
  EXPECT_TRUE(s.clean()) << to_json(s).dump();
}

TEST(Scan, RandomIsCleanAndWorkerInvariant) {
  ScanOptions o;
  o.samples = 1500;
  o.keep_traces = true;
  ScanSummary one = scan_for_counterexamples(o);
  EXPECT_TRUE(one.clean()) << to_json(one).dump();
  EXPECT_EQ(one.traces.size(), 1500u);
  o.workers = 3;
  ScanSummary three = scan_for_counterexamples(o);
  EXPECT_EQ(to_json(one).dump(), to_json(three).dump());
  EXPECT_EQ(one.traces, three.traces);
}

TEST(Scan, TriangleSeeingRuleFindsViolations) {
  ScanOptions o;
  o.mode = ScanMode::exhaustive;
  o.n_max = 6;
  o.t2_rule = T2Rule::triangles;
  ScanSummary s = scan_for_counterexamples(o);
  EXPECT_GT(s.violations, 0u);
  ASSERT_FALSE(s.violation_examples.empty());
  EXPECT_EQ(s.violation_examples.front()["report"]["id"], "A.3(c) j=3");
}

TEST(Scan, RejectsBadOptions) {
  ScanOptions o;
  o.mode = ScanMode::exhaustive;
  o.n_max = 7;
  EXPECT_THROW(scan_for_counterexamples(o), InputError);
  o.mode = ScanMode::random;
  o.n_max = 17;
  EXPECT_THROW(scan_for_counterexamples(o), InputError);
  o.n_max = 12;
  o.workers = 0;
  EXPECT_THROW(scan_for_counterexamples(o), InputError);
  EXPECT_THROW(parse_scan_mode("sampled"), InputError);
}
