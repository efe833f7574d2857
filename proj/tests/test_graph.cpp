#include <gtest/gtest.h>

#include <random>

#include "rch/graph.hpp"
#include "rch/graph_io.hpp"
#include "support/brute_force.hpp"

using namespace rch;

TEST(VertexSet, RangeAndIteration) {
  VertexSet s = VertexSet::range(70);
  EXPECT_EQ(s.size(), 70);
  EXPECT_TRUE(s.contains(69));
  EXPECT_FALSE(s.contains(70));
  VertexSet t{3, 64, 127};
  EXPECT_EQ(t.to_vector(), (std::vector<int>{3, 64, 127}));
  EXPECT_EQ(VertexSet::range(128).size(), 128);
  EXPECT_EQ(VertexSet{}.first(), -1);
}

TEST(Graph, EdgeCountBasics) {
  EXPECT_EQ(edge_count(Graph(5)), 0);
  EXPECT_EQ(edge_count(complete_graph(6)), 15);
}

TEST(Graph, EdgesBetween) {
  Graph k4 = complete_graph(4);
  EXPECT_EQ(edges_between(k4, {0, 1}, {2, 3}), 4);
  EXPECT_EQ(edges_between(k4, {}, {2, 3}), 0);
  EXPECT_THROW(edges_between(k4, {0, 1}, {1, 2}), InputError);
}

TEST(Graph, EdgesWithin) {
  EXPECT_EQ(edges_within(complete_graph(5), VertexSet::range(5)), 10);
  GraphBuilder b(6);
  b.add_complete_bipartite({0, 1, 2}, {3, 4, 5});
  EXPECT_EQ(edges_within(b.build(), {0, 1, 2}), 0);
}

TEST(Graph, Triangles) {
  EXPECT_TRUE(enumerate_triangles(cycle_graph(5)).empty());
  EXPECT_EQ(enumerate_triangles(complete_graph(4)).size(), 4u);
  GraphBuilder b(complete_graph(6));
  b.remove_edge(0, 1).remove_edge(2, 3).remove_edge(4, 5);
  EXPECT_EQ(enumerate_triangles(b.build()).size(), 8u);
}

TEST(Graph, TrianglesMatchNaiveOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 16);
    double p = (1 + rng() % 9) / 10.0;
    Graph g = oracle::random_graph(n, p, rng);
    ASSERT_EQ(enumerate_triangles(g), oracle::naive_triangles(g));
  }
}

TEST(Graph, ComplementTwiceAndPartitionSum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 40);
    Graph g = oracle::random_graph(n, 0.4, rng);
    EXPECT_EQ(complement(complement(g)), g);
    EXPECT_EQ(edge_count(g) + edge_count(complement(g)), static_cast<long>(n) * (n - 1) / 2);

    int k = 1 + static_cast<int>(rng() % 4);
    std::vector<VertexSet> parts(k);
    for (int v = 0; v < n; ++v) parts[rng() % k].insert(v);
    long sum = 0;
    for (int i = 0; i < k; ++i) {
      sum += edges_within(g, parts[i]);
      for (int j = i + 1; j < k; ++j) sum += edges_between(g, parts[i], parts[j]);
    }
    EXPECT_EQ(sum, edge_count(g));
  }
}

TEST(Graph, MiscOperations) {
  EXPECT_EQ(edge_count(complement(complete_graph(7))), 0);
  EXPECT_EQ(min_degree(cycle_graph(5)), 2);
  EXPECT_FALSE(is_bipartite(cycle_graph(5)));
  EXPECT_TRUE(is_bipartite(cycle_graph(6)));
  EXPECT_FALSE(is_bipartite(petersen_graph()));

  Graph g = complete_graph(5);
  Graph h = induced_subgraph(g, {1, 3, 4});
  EXPECT_EQ(h.order(), 3);
  EXPECT_EQ(edge_count(h), 3);
}

TEST(Graph, BuilderRejectsBadInput) {
  GraphBuilder b(4);
  EXPECT_THROW(b.add_edge(1, 1), InputError);
  EXPECT_THROW(b.add_edge(0, 4), InputError);
  EXPECT_THROW(Graph(129), InputError);
}

TEST(Graph, ComponentsAndBipartition) {
  GraphBuilder b(7);
  b.add_edge(0, 1).add_edge(1, 2).add_edge(4, 5);
  auto comps = connected_components(b.build(), VertexSet::range(7));
  ASSERT_EQ(comps.size(), 4u);
  EXPECT_EQ(comps[0], (VertexSet{0, 1, 2}));
  EXPECT_EQ(comps[1], (VertexSet{3}));
  auto bp = bipartition(b.build(), VertexSet::range(7));
  ASSERT_TRUE(bp.has_value());
  EXPECT_TRUE(bp->first.contains(0));
  EXPECT_TRUE(bp->second.contains(1));
}

TEST(GraphIo, TextRoundTrip) {
  Graph g = petersen_graph();
  EXPECT_EQ(parse_graph_text(to_graph_text(g)), g);
  EXPECT_THROW(parse_graph_text("3\n0 3\n"), ParseError);
  EXPECT_THROW(parse_graph_text("3\n0 1 2\n"), ParseError);
  EXPECT_THROW(parse_graph_text("x"), ParseError);
  EXPECT_THROW(parse_graph_text("2\n1 1\n"), ParseError);
}

TEST(GraphIo, Graph6KnownStrings) {
  EXPECT_EQ(to_graph6(petersen_graph()).size(), 9u);
  EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
  EXPECT_EQ(from_graph6("C~"), complete_graph(4));
  EXPECT_EQ(to_graph6(cycle_graph(5)), "Dhc");
  EXPECT_THROW(from_graph6("C~~"), ParseError);
}

TEST(GraphIo, Graph6RoundTripRandom) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 128);
    Graph g = oracle::random_graph(n, 0.3, rng);
    ASSERT_EQ(from_graph6(to_graph6(g)), g);
  }
}
