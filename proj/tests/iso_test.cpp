#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "test_computations.hpp"

using namespace subquest;

namespace {

MatchSubgraph unit_at(const IsoComputation& c, const Graph& g, VertexId v) {
  for (auto& s : c.units(g)) {
    if (s.vertices.front() == v) return s;
  }
  throw std::logic_error("no unit");
}

std::vector<std::uint64_t> engine_scores(const Graph& g, const Graph& query, std::size_t k,
                                         bool prune = true) {
  auto idx = build_index(g, IsoComputation::required_hops(query));
  IsoComputation c(query, idx);
  HeapQueue<MatchSubgraph> q;
  auto run = run_basic(g, c, k, q, {prune});
  std::vector<std::uint64_t> out;
  for (const auto& e : run.results.entries()) out.push_back(iso_score(e.item));
  return out;
}

}  // namespace

TEST(VertexIndex, Path4) {
  auto g = fixtures::path4();
  auto idx = build_index(g, 2);
  EXPECT_EQ(idx.lookup(1, 1, 0), 2u);
  EXPECT_EQ(idx.lookup(0, 1, 0), 2u);
  EXPECT_EQ(idx.lookup(0, 2, 0), 2u);
  EXPECT_EQ(idx.lookup(0, 2, 1), std::nullopt);
}

TEST(VertexIndex, ShellsNotBalls) {
  // Star: center 0 (degree 3), leaves 1..3. From a leaf the center is one
  // hop away and the other leaves two.
  auto g = Graph::build(4, std::vector<LabeledEdge>{{0, 1, 0}, {0, 2, 0}, {0, 3, 0}}, {0, 0, 0, 0}, true);
  auto idx = build_index(g, 2);
  EXPECT_EQ(idx.lookup(1, 1, 0), 3u);
  EXPECT_EQ(idx.lookup(1, 2, 0), 1u);
  EXPECT_EQ(idx.lookup_within(1, 2, 0), 3u);
}

TEST(VertexIndex, IsolatedVertex) {
  auto g = Graph::build(2, std::vector<LabeledEdge>{});
  auto idx = build_index(g, 3);
  EXPECT_TRUE(idx.entries(0).empty());
  EXPECT_THROW(build_index(g, 0), std::invalid_argument);
}

TEST(VertexIndex, ThreadCountDoesNotMatter) {
  std::mt19937_64 rng(79);
  auto g = fixtures::connected_graph(60, 0.05, 3, rng);
  auto one = build_index(g, 3, 1);
  EXPECT_EQ(build_index(g, 3, 4), one);
  EXPECT_EQ(build_index(g, 3, 64), one);
}

TEST(VertexIndex, FileRoundTrip) {
  std::mt19937_64 rng(83);
  auto g = fixtures::connected_graph(25, 0.1, 3, rng);
  auto idx = build_index(g, 2);
  std::stringstream io;
  write_index(io, idx);
  auto back = read_index(io);
  EXPECT_EQ(back.max_hops(), 2u);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto a = idx.entries(v);
    auto b = back.entries(v);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST(VertexIndex, FileErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_index(in);
  };
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("D 0\n"), ParseError);
  EXPECT_THROW(parse("D 1\n0 2 0 1\n"), ParseError);
  EXPECT_THROW(parse("D 2\n0 1 0 1\n0 1 0 1\n"), ParseError);
  EXPECT_THROW(parse("D 2\n0 1 0\n"), ParseError);
  EXPECT_NO_THROW(parse("D 2\n0 1 0 1\n0 2 0 1\n1 1 0 3\n"));
}

TEST(Iso, Path4Bounds) {
  auto g = fixtures::path4();
  auto query = fixtures::edge_aa();
  auto idx = build_index(g, 1);
  IsoComputation c(query, idx);
  std::vector<std::uint64_t> bounds;
  for (const auto& s : c.units(g)) bounds.push_back(iso_upper_bound(s));
  EXPECT_EQ(bounds, (std::vector<std::uint64_t>{3, 4, 4, 3}));
  EXPECT_EQ(unit_at(c, g, 1).ext.remaining_bound, 2u);
  EXPECT_EQ(c.priority(unit_at(c, g, 1)), (Priority{0, 4}));
}

TEST(Iso, Path4Run) {
  auto g = fixtures::path4();
  auto query = fixtures::edge_aa();
  auto idx = build_index(g, 1);
  IsoComputation c(query, idx);
  std::vector<VertexId> dequeued_units;
  std::vector<VertexId> parent_pruned;
  RunHooks<MatchSubgraph> hooks;
  hooks.on_dequeue = [&](const MatchSubgraph& s, const Priority&) {
    if (s.edges.empty()) dequeued_units.push_back(s.vertices.front());
  };
  hooks.on_parent_pruned = [&](const MatchSubgraph& s) { parent_pruned.push_back(s.vertices.front()); };
  HeapQueue<MatchSubgraph> q;
  auto run = run_basic(g, c, 1, q, {}, hooks);
  ASSERT_EQ(run.results.size(), 1u);
  EXPECT_EQ(iso_score(run.results.entries()[0].item), 4u);
  EXPECT_EQ(run.results.entries()[0].item.vertices, (std::vector<VertexId>{1, 2}));
  // v2 goes before v1; after the score-4 match v1 and v4 are dominated.
  EXPECT_EQ(dequeued_units.front(), 1u);
  EXPECT_EQ(parent_pruned, (std::vector<VertexId>{0, 3}));
}

TEST(Iso, ExpandableChecks) {
  auto g = fixtures::path4();
  auto query = fixtures::edge_aa();
  auto idx = build_index(g, 1);
  IsoComputation c(query, idx);
  auto s2 = unit_at(c, g, 1);
  EXPECT_TRUE(c.expandable(g, s2, EdgeRef::of(1, 2)));
  auto s6 = c.expand(g, s2, EdgeRef::of(1, 2));
  EXPECT_TRUE(c.relevant(s6));
  EXPECT_EQ(s6.ext.remaining_bound, 0u);
  EXPECT_EQ(iso_upper_bound(s6), iso_score(s6));
  for (auto e : g.edges()) EXPECT_FALSE(c.expandable(g, s6, e));

  // Seed a with neighbors a and b; the query edge a-b only takes the b side.
  auto mixed = Graph::build(3, std::vector<LabeledEdge>{{0, 1, 0}, {0, 2, 0}}, {0, 0, 1}, true);
  auto ab = Graph::build(2, std::vector<LabeledEdge>{{0, 1, 0}}, {0, 1}, true);
  auto midx = build_index(mixed, 1);
  IsoComputation mc(ab, midx);
  auto seed = unit_at(mc, mixed, 0);
  EXPECT_FALSE(mc.expandable(mixed, seed, EdgeRef::of(0, 1)));
  EXPECT_TRUE(mc.expandable(mixed, seed, EdgeRef::of(0, 2)));

  // Targeted seeding: with query a-a, labeled5's a vertices have no a neighbor.
  auto fb = fixtures::labeled5();
  auto fidx = build_index(fb, 1);
  IsoComputation aa(query, fidx);
  EXPECT_TRUE(aa.units(fb).empty());
}

TEST(Iso, DominationIsStrict) {
  auto g = fixtures::path4();
  auto query = fixtures::edge_aa();
  auto idx = build_index(g, 1);
  IsoComputation c(query, idx);
  auto s2 = unit_at(c, g, 1);
  auto s6 = c.expand(g, s2, EdgeRef::of(1, 2));
  EXPECT_FALSE(c.dominated(unit_at(c, g, 2), s6));  // 4 < 4 is false
  EXPECT_TRUE(c.dominated(unit_at(c, g, 0), s6));
}

TEST(Iso, Labeled5QueryAbb) {
  auto g = fixtures::labeled5();
  auto query = fixtures::query_abb();
  EXPECT_EQ(engine_scores(g, query, 4), (std::vector<std::uint64_t>{7, 7, 6, 6}));
  EXPECT_EQ(engine_scores(g, query, 10).size(), 4u);
  EXPECT_EQ(oracle::brute_iso_matches(g, query).size(), 4u);
}

TEST(Iso, QueryValidation) {
  auto g = fixtures::labeled5();
  auto idx = build_index(g, 1);
  auto query = fixtures::query_abb();
  EXPECT_THROW(IsoComputation(query, idx), Error);
  auto split = Graph::build(2, std::vector<LabeledEdge>{}, {0, 0}, true);
  auto idx2 = build_index(g, 2);
  EXPECT_THROW(IsoComputation(split, idx2), Error);
  EXPECT_EQ(IsoComputation::required_hops(query), 2u);
}

TEST(Iso, BoundIsAdmissible) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 25; ++t) {
    auto g = fixtures::connected_graph(10, 0.2, 2, rng);
    auto query = fixtures::connected_graph(2 + t % 3, 0.4, 2, rng);
    auto idx = build_index(g, IsoComputation::required_hops(query));
    IsoComputation c(query, idx);
    // The ancestor bound of every relevant subgraph covers its score.
    std::map<std::pair<std::vector<VertexId>, std::vector<EdgeRef>>, std::uint64_t> bound_of;
    RunHooks<MatchSubgraph> hooks;
    hooks.on_child = [&](const MatchSubgraph& parent, const MatchSubgraph& child, bool) {
      EXPECT_LE(iso_upper_bound(child), iso_upper_bound(parent));
      EXPECT_LE(iso_score(child), iso_upper_bound(parent));
    };
    HeapQueue<MatchSubgraph> q;
    run_basic(g, c, 1, q, {false}, hooks);
  }
}

TEST(Iso, MatchesAreIsomorphic) {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 25; ++t) {
    auto g = fixtures::connected_graph(10, 0.25, 2, rng);
    auto query = fixtures::connected_graph(2 + t % 3, 0.4, 2, rng);
    auto idx = build_index(g, IsoComputation::required_hops(query));
    IsoComputation c(query, idx);
    HeapQueue<MatchSubgraph> q;
    auto run = run_basic(g, c, 1000, q, {false});
    auto matches = oracle::brute_iso_matches(g, query, {12, 200, 10'000'000});
    std::set<std::pair<std::vector<VertexId>, std::vector<EdgeRef>>> want, got;
    for (const auto& m : matches) want.emplace(m.subgraph.vertices, m.subgraph.edges);
    for (const auto& e : run.results.entries()) got.insert(fixtures::canonical_sets(e.item));
    EXPECT_EQ(got, want) << "trial " << t;
  }
}

TEST(Iso, TopKMatchesOracle) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 25; ++t) {
    auto g = fixtures::connected_graph(6 + t % 7, 0.2, 1 + t % 3, rng);
    auto query = fixtures::connected_graph(1 + t % 4, 0.4, 1 + t % 3, rng);
    const std::size_t k = t % 2 ? 3 : 1;
    auto want = oracle::brute_topk_iso(g, query, k, {12, 200, 10'000'000});
    EXPECT_EQ(engine_scores(g, query, k), want) << "trial " << t;
    EXPECT_EQ(engine_scores(g, query, k, false), want) << "trial " << t;
  }
}
