#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "test_computations.hpp"

using namespace subquest;

TEST(VertexOriented, TriangleTail) {
  auto g = fixtures::triangle_tail();
  std::vector<VertexId> s1{0};
  EXPECT_EQ(vertex_oriented_expansions(g, s1), (std::vector<VertexId>{1, 2}));
  // v4 hangs off v3 only, so from {v2} only v3 qualifies.
  std::vector<VertexId> s2{1};
  EXPECT_EQ(vertex_oriented_expansions(g, s2), (std::vector<VertexId>{2}));
  std::vector<VertexId> all{0, 1, 2, 3};
  EXPECT_TRUE(vertex_oriented_expansions(g, all).empty());
}

TEST(EdgeOriented, Labeled5IncludesNextEdge) {
  auto g = fixtures::labeled5();
  std::vector<VertexId> vs{0, 1};
  std::vector<EdgeRef> es{EdgeRef::of(0, 1)};
  auto out = edge_oriented_expansions(g, vs, es);
  EXPECT_NE(std::find(out.begin(), out.end(), EdgeRef::of(1, 2)), out.end());
}

TEST(EdgeOriented, WholeGraph) {
  auto g = fixtures::labeled5();
  std::vector<VertexId> vs{0, 1, 2, 3, 4};
  auto es = g.edges();
  EXPECT_TRUE(edge_oriented_expansions(g, vs, es).empty());
}

TEST(EdgeOriented, StarSpokes) {
  auto g = Graph::build(4, std::vector<LabeledEdge>{{0, 1, 0}, {0, 2, 0}, {0, 3, 0}});
  std::vector<VertexId> vs{0, 1};
  std::vector<EdgeRef> es{EdgeRef::of(0, 1)};
  EXPECT_EQ(edge_oriented_expansions(g, vs, es),
            (std::vector<EdgeRef>{EdgeRef::of(0, 2), EdgeRef::of(0, 3)}));

  // Across a whole run every two-spoke subgraph has exactly one parent.
  fixtures::AllSubgraphs c;
  std::map<std::vector<EdgeRef>, int> parents;
  RunHooks<fixtures::AllSubgraphs::subgraph_type> hooks;
  hooks.on_child = [&](const auto&, const auto& child, bool) {
    if (child.edges.size() == 2) ++parents[fixtures::canonical_sets(child).second];
  };
  FifoQueue<fixtures::AllSubgraphs::subgraph_type> q;
  run_basic(g, c, 1, q, {}, hooks);
  EXPECT_EQ(parents.size(), 3u);
  for (const auto& [edges, n] : parents) EXPECT_EQ(n, 1);
}

TEST(EdgeOriented, EnumeratesEveryConnectedSubgraphOnce) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto g = fixtures::gnp(3 + t % 6, 0.45, rng);
    fixtures::AllSubgraphs c;
    std::set<std::pair<std::vector<VertexId>, std::vector<EdgeRef>>> seen;
    std::size_t constructed = 0;
    RunHooks<fixtures::AllSubgraphs::subgraph_type> hooks;
    hooks.on_dequeue = [&](const auto& s, const Priority&) {
      ++constructed;
      seen.insert(fixtures::canonical_sets(s));
    };
    HeapQueue<fixtures::AllSubgraphs::subgraph_type> q;
    auto run = run_basic(g, c, 1, q, {false}, hooks);
    EXPECT_EQ(constructed, seen.size());
    EXPECT_EQ(run.stats.candidate_subgraphs, constructed);
    oracle::EnumerationBudget budget{20, 40, 1'000'000};
    auto expected = oracle::enumerate_connected_subgraphs(g, oracle::Mode::edge_subgraph, budget);
    ASSERT_EQ(seen.size(), expected.size());
    std::size_t i = 0;
    for (const auto& s : seen) {
      EXPECT_EQ(s.first, expected[i].vertices);
      EXPECT_EQ(s.second, expected[i].edges);
      ++i;
    }
  }
}

TEST(CanonicalLastEdge, PrefersLargestRemovable) {
  // Path 0-1-2-3: only the end edges are removable; (2,3) is the larger.
  std::vector<EdgeRef> path{EdgeRef::of(0, 1), EdgeRef::of(1, 2), EdgeRef::of(2, 3)};
  EXPECT_EQ(canonical_last_edge(path), EdgeRef::of(2, 3));
  std::vector<EdgeRef> bridge_last{EdgeRef::of(0, 1), EdgeRef::of(0, 2), EdgeRef::of(2, 3), EdgeRef::of(0, 3)};
  EXPECT_EQ(canonical_last_edge(bridge_last), EdgeRef::of(2, 3));
}
