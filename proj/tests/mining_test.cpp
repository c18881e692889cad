#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "test_computations.hpp"

using namespace subquest;

namespace {

/// Every group constructed with domination disabled, keyed by code text.
std::map<std::string, std::size_t> all_group_frequencies(const Graph& g, std::size_t max_edges) {
  MiningComputation c(max_edges);
  std::map<std::string, std::size_t> out;
  RunHooks<PatternGroup> hooks;
  hooks.on_dequeue = [&](const PatternGroup& grp, const Priority&) {
    auto [it, inserted] = out.emplace(to_string(grp.key()), grp.frequency());
    EXPECT_TRUE(inserted) << "pattern grouped twice: " << it->first;
  };
  HeapQueue<PatternGroup> q;
  run_aggregate(g, c, 1, q, {false}, hooks);
  return out;
}

std::map<std::string, std::size_t> oracle_frequencies(const Graph& g, std::size_t max_edges) {
  std::map<std::string, std::size_t> out;
  for (const auto& pc : oracle::brute_pattern_freqs(g, max_edges, {12, 200, 10'000'000})) {
    out[to_string(min_dfs_code(pc.pattern))] = pc.frequency;
  }
  return out;
}

}  // namespace

TEST(Mining, SeedsLabeled5) {
  auto g = fixtures::labeled5();
  MiningComputation c(2);
  auto units = c.units(g);
  EXPECT_EQ(units.size(), 8u);
  std::map<std::string, int> per_code;
  for (const auto& u : units) ++per_code[to_string(*u.ext.code)];
  EXPECT_EQ(per_code["(0,1,0,0,1)"], 2);
  EXPECT_EQ(per_code["(0,1,1,0,1)"], 6);
}

TEST(Mining, Labeled5Frequencies) {
  auto freq = all_group_frequencies(fixtures::labeled5(), 2);
  EXPECT_EQ(freq.at("(0,1,0,0,1)"), 2u);               // a-b
  EXPECT_EQ(freq.at("(0,1,1,0,1)"), 3u);               // b-b
  EXPECT_EQ(freq.at("(0,1,0,0,1);(1,2,1,0,1)"), 2u);   // a-b-b
  EXPECT_EQ(freq.at("(0,1,1,0,1);(1,2,1,0,1)"), 3u);   // b-b-b
  EXPECT_EQ(freq, oracle_frequencies(fixtures::labeled5(), 2));
}

TEST(Mining, MniSupport) {
  auto g = fixtures::labeled5();
  MiningComputation c(1);
  std::map<std::string, std::size_t> seen;
  HeapQueue<PatternGroup> q;
  RunHooks<PatternGroup> hooks;
  hooks.on_dequeue = [&](const PatternGroup& grp, const Priority&) {
    seen[to_string(grp.key())] = mni_support(grp);
  };
  run_aggregate(g, c, 1, q, {false}, hooks);
  EXPECT_EQ(seen.at("(0,1,0,0,1)"), 2u);
  EXPECT_EQ(seen.at("(0,1,1,0,1)"), 3u);
}

TEST(Mining, PriorityAndDomination) {
  auto g = fixtures::labeled5();
  MiningComputation c(2);
  std::vector<std::string> order;
  RunHooks<PatternGroup> hooks;
  std::vector<std::string> pruned;
  hooks.on_dequeue = [&](const PatternGroup& grp, const Priority&) { order.push_back(to_string(grp.key())); };
  hooks.on_parent_pruned = [&](const PatternGroup& grp) { pruned.push_back(to_string(grp.key())); };
  HeapQueue<PatternGroup> q;
  auto run = run_aggregate(g, c, 1, q, {}, hooks);
  ASSERT_GE(order.size(), 3u);
  // b-b (f=3) first, then its child b-b-b, then a-b which is now dominated.
  EXPECT_EQ(order[0], "(0,1,1,0,1)");
  EXPECT_EQ(order[1], "(0,1,1,0,1);(1,2,1,0,1)");
  EXPECT_EQ(order[2], "(0,1,0,0,1)");
  EXPECT_EQ(pruned, (std::vector<std::string>{"(0,1,0,0,1)"}));

  PatternGroup x(DfsCode({{0, 1, 0, 0, 0}}));
  PatternGroup y(DfsCode({{0, 1, 0, 0, 0}}));
  auto units = c.units(Graph::build(3, std::vector<LabeledEdge>{{0, 1, 0}, {1, 2, 0}}, {0, 0, 0}, true));
  for (auto& u : units) x.add(u);
  for (auto& u : units) y.add(u);
  EXPECT_FALSE(c.dominated(x, y));
  EXPECT_EQ(c.priority(x), (Priority{1, 3}));
}

TEST(Mining, BbExtendsOnlyTowardBbb) {
  // From a b-b edge no extension reaches a-b-b: that code starts with a-b.
  auto g = fixtures::labeled5();
  MiningComputation c(2);
  MinimalityCache cache;
  for (const auto& u : c.units(g)) {
    if (to_string(*u.ext.code) != "(0,1,1,0,1)") continue;
    for (const auto& x : pattern_expansions(g, u, cache)) {
      EXPECT_EQ(x.tuple.from_label, 1);
      EXPECT_EQ(x.tuple.to_label, 1);
    }
  }
}

TEST(Mining, EmbeddingCompleteness) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    auto g = fixtures::connected_graph(5 + t % 6, 0.15, 1 + t % 3, rng);
    const std::size_t m = 1 + t % 3;
    EXPECT_EQ(all_group_frequencies(g, m), oracle_frequencies(g, m)) << "trial " << t;
  }
}

TEST(Mining, AntiMonotone) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 15; ++t) {
    auto g = fixtures::connected_graph(9, 0.2, 2, rng);
    MiningComputation c(3);
    RunHooks<PatternGroup> hooks;
    std::size_t pairs = 0;
    hooks.on_child = [&](const PatternGroup& parent, const PatternGroup& child, bool) {
      ++pairs;
      EXPECT_LE(child.frequency(), parent.frequency());
    };
    HeapQueue<PatternGroup> q;
    run_aggregate(g, c, 1, q, {false}, hooks);
    EXPECT_GT(pairs, 0u);
  }
}

TEST(Mining, EmbeddingsAreAlignedWithCode) {
  std::mt19937_64 rng(71);
  auto g = fixtures::connected_graph(10, 0.25, 2, rng);
  MiningComputation c(3);
  RunHooks<PatternGroup> hooks;
  hooks.on_dequeue = [&](const PatternGroup& grp, const Priority&) {
    for (const auto& s : grp.members()) {
      ASSERT_EQ(s.edges.size(), grp.key().size());
      for (std::size_t i = 0; i < s.edges.size(); ++i) {
        const auto& t = grp.key()[i];
        auto from = s.vertices[static_cast<std::size_t>(t.from)];
        auto to = s.vertices[static_cast<std::size_t>(t.to)];
        EXPECT_EQ(s.edges[i], EdgeRef::of(from, to));
        EXPECT_EQ(g.label(from), t.from_label);
        EXPECT_EQ(g.label(to), t.to_label);
      }
    }
  };
  HeapQueue<PatternGroup> q;
  run_aggregate(g, c, 1, q, {false}, hooks);
}

TEST(Mining, TopKMatchesOracle) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 20; ++t) {
    auto g = fixtures::connected_graph(6 + t % 7, 0.15, 1 + t % 3, rng);
    const std::size_t m = 1 + t % 3;
    const std::size_t k = t % 2 ? 3 : 1;
    MiningComputation c(m);
    HeapQueue<PatternGroup> q;
    auto run = run_aggregate(g, c, k, q);
    std::multiset<std::pair<std::string, std::size_t>> got, want;
    for (const auto& e : run.results.entries()) got.emplace(to_string(e.item.key()), e.item.frequency());
    for (const auto& pc : oracle::brute_topk_patterns(g, m, k, {12, 200, 10'000'000})) {
      want.emplace(to_string(min_dfs_code(pc.pattern)), pc.frequency);
    }
    EXPECT_EQ(got, want) << "trial " << t;
  }
}

TEST(Mining, GroupPayloadRoundTrip) {
  auto g = fixtures::labeled5();
  MiningComputation c(2);
  HeapQueue<PatternGroup> q;
  auto run = run_aggregate(g, c, 1, q);
  const auto& grp = run.results.entries()[0].item;
  ByteWriter w;
  PayloadCodec<PatternGroup>::encode(grp, w);
  auto bytes = std::move(w).take();
  ByteReader r(bytes);
  auto back = PayloadCodec<PatternGroup>::decode(r);
  EXPECT_EQ(back.key(), grp.key());
  EXPECT_EQ(back.frequency(), grp.frequency());
  EXPECT_EQ(back.members().size(), grp.members().size());
  EXPECT_EQ(back.images(), grp.images());
}
