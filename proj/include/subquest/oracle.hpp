#pragma once

// Brute-force baselines. Nothing here shares code with the engine or the
// computations; only the graph type is common.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "subquest/error.hpp"
#include "subquest/graph.hpp"

namespace subquest::oracle {

struct EnumerationBudget {
  std::size_t max_vertices = 12;
  std::size_t max_edges = 20;
  /// Cap on subgraphs (or cliques, or embeddings) produced.
  std::size_t max_subgraphs = 10'000'000;
};

enum class Mode {
  /// Connected vertex sets, each with all graph edges among its vertices.
  vertex_induced,
  /// Connected edge sets (plus every single vertex as an edgeless subgraph).
  edge_subgraph,
};

struct FoundSubgraph {
  std::vector<VertexId> vertices;  // ascending
  std::vector<EdgeRef> edges;      // ascending

  friend auto operator<=>(const FoundSubgraph&, const FoundSubgraph&) = default;
};

namespace detail {

inline void check_graph(const Graph& g, const EnumerationBudget& b) {
  if (g.vertex_count() > b.max_vertices) {
    throw BudgetExceeded("graph has " + std::to_string(g.vertex_count()) +
                         " vertices, budget allows " + std::to_string(b.max_vertices));
  }
  if (g.edge_count() > b.max_edges) {
    throw BudgetExceeded("graph has " + std::to_string(g.edge_count()) + " edges, budget allows " +
                         std::to_string(b.max_edges));
  }
}

inline void count_one(std::size_t& counter, const EnumerationBudget& b) {
  if (++counter > b.max_subgraphs) {
    throw BudgetExceeded("enumeration exceeded " + std::to_string(b.max_subgraphs) + " items");
  }
}

inline std::vector<EdgeRef> induced_edges(const Graph& g, const std::vector<VertexId>& vs) {
  std::vector<EdgeRef> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (g.has_edge(vs[i], vs[j])) out.push_back(EdgeRef::of(vs[i], vs[j]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<VertexId> vertices_of(const std::vector<EdgeRef>& es) {
  std::vector<VertexId> vs;
  for (auto e : es) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace detail

/// Every connected subgraph exactly once, in ascending order. `max_size`
/// bounds vertices (vertex_induced) or edges (edge_subgraph).
inline std::vector<FoundSubgraph> enumerate_connected_subgraphs(
    const Graph& g, Mode mode, const EnumerationBudget& budget = {},
    std::size_t max_size = std::numeric_limits<std::size_t>::max()) {
  detail::check_graph(g, budget);
  std::size_t produced = 0;
  std::vector<FoundSubgraph> out;
  if (mode == Mode::vertex_induced) {
    std::set<std::vector<VertexId>> seen;
    std::vector<std::vector<VertexId>> frontier;
    if (max_size >= 1) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        seen.insert({v});
        frontier.push_back({v});
        detail::count_one(produced, budget);
      }
    }
    while (!frontier.empty()) {
      std::vector<std::vector<VertexId>> next;
      for (const auto& vs : frontier) {
        if (vs.size() >= max_size) continue;
        for (auto v : vs) {
          for (auto w : g.neighbors(v)) {
            if (std::binary_search(vs.begin(), vs.end(), w)) continue;
            auto grown = vs;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
            if (seen.insert(grown).second) {
              detail::count_one(produced, budget);
              next.push_back(std::move(grown));
            }
          }
        }
      }
      frontier = std::move(next);
    }
    for (const auto& vs : seen) out.push_back({vs, detail::induced_edges(g, vs)});
  } else {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      detail::count_one(produced, budget);
      out.push_back({{v}, {}});
    }
    std::set<std::vector<EdgeRef>> seen;
    std::vector<std::vector<EdgeRef>> frontier;
    if (max_size >= 1) {
      for (auto e : g.edges()) {
        detail::count_one(produced, budget);
        seen.insert({e});
        frontier.push_back({e});
      }
    }
    while (!frontier.empty()) {
      std::vector<std::vector<EdgeRef>> next;
      for (const auto& es : frontier) {
        if (es.size() >= max_size) continue;
        for (auto v : detail::vertices_of(es)) {
          for (auto w : g.neighbors(v)) {
            auto e = EdgeRef::of(v, w);
            if (std::binary_search(es.begin(), es.end(), e)) continue;
            auto grown = es;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), e), e);
            if (seen.insert(grown).second) {
              detail::count_one(produced, budget);
              next.push_back(std::move(grown));
            }
          }
        }
      }
      frontier = std::move(next);
    }
    for (const auto& es : seen) out.push_back({detail::vertices_of(es), es});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All cliques (vertex sets, ascending), found by plain include/exclude
/// recursion without any bound. Only `max_vertices` and `max_subgraphs` of
/// the budget apply.
inline std::vector<std::vector<VertexId>> brute_cliques(const Graph& g,
                                                        const EnumerationBudget& budget = {}) {
  if (g.vertex_count() > budget.max_vertices) {
    throw BudgetExceeded("graph exceeds the vertex budget");
  }
  std::vector<std::vector<VertexId>> out;
  std::size_t produced = 0;
  std::vector<VertexId> current;
  auto grow = [&](auto&& self, VertexId from) -> void {
    for (VertexId v = from; v < g.vertex_count(); ++v) {
      bool adjacent_to_all = std::all_of(current.begin(), current.end(),
                                         [&](VertexId u) { return g.has_edge(u, v); });
      if (!adjacent_to_all) continue;
      current.push_back(v);
      detail::count_one(produced, budget);
      out.push_back(current);
      self(self, v + 1);
      current.pop_back();
    }
  };
  grow(grow, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct CliqueAnswer {
  std::size_t size = 0;
  std::vector<VertexId> witness;
};

/// Largest clique; among equals the lexicographically smallest vertex set.
inline CliqueAnswer brute_max_clique(const Graph& g, const EnumerationBudget& budget = {}) {
  CliqueAnswer best;
  for (auto& c : brute_cliques(g, budget)) {
    if (c.size() > best.size) best = {c.size(), std::move(c)};
  }
  return best;
}

/// Canonical string of a small labeled pattern: the lexicographically
/// smallest (labels, upper-triangle edge labels) over all vertex orders.
inline std::string canonical_form(const Graph& p) {
  const auto n = p.vertex_count();
  if (n > 8) throw BudgetExceeded("canonical_form is limited to 8 vertices");
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  std::vector<std::int64_t> best;
  do {
    std::vector<std::int64_t> key;
    for (auto v : perm) key.push_back(p.label(v));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto l = p.edge_label(perm[i], perm[j]);
        key.push_back(l ? *l + 1 : 0);
      }
    }
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::string s = std::to_string(n) + ":";
  for (std::size_t i = 0; i < best.size(); ++i) s += (i ? "," : "") + std::to_string(best[i]);
  return s;
}

/// The subgraph as a standalone graph (vertices renumbered in ascending order).
inline Graph as_pattern(const Graph& g, const FoundSubgraph& s) {
  std::vector<Label> labels;
  for (auto v : s.vertices) labels.push_back(g.label(v));
  auto pos = [&](VertexId v) {
    return static_cast<VertexId>(std::lower_bound(s.vertices.begin(), s.vertices.end(), v) -
                                 s.vertices.begin());
  };
  std::vector<LabeledEdge> edges;
  for (auto e : s.edges) edges.push_back({pos(e.u), pos(e.v), *g.edge_label(e.u, e.v)});
  return Graph::build(s.vertices.size(), edges, std::move(labels), true);
}

/// Per pattern vertex, the set of data vertices it maps to over every
/// label- and edge-preserving injective map.
inline std::vector<std::set<VertexId>> brute_images(const Graph& g, const Graph& pattern,
                                                    const EnumerationBudget& budget = {}) {
  const auto n = pattern.vertex_count();
  std::vector<std::set<VertexId>> images(n);
  std::vector<VertexId> map(n, std::numeric_limits<VertexId>::max());
  std::vector<char> used(g.vertex_count(), 0);
  std::size_t produced = 0;
  auto place = [&](auto&& self, VertexId pv) -> void {
    if (pv == n) {
      detail::count_one(produced, budget);
      for (VertexId t = 0; t < n; ++t) images[t].insert(map[t]);
      return;
    }
    for (VertexId dv = 0; dv < g.vertex_count(); ++dv) {
      if (used[dv] || g.label(dv) != pattern.label(pv)) continue;
      bool ok = true;
      for (auto pw : pattern.neighbors(pv)) {
        if (pw >= pv) continue;
        auto el = g.edge_label(dv, map[pw]);
        if (!el || *el != *pattern.edge_label(pv, pw)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[pv] = dv;
      used[dv] = 1;
      self(self, pv + 1);
      used[dv] = 0;
    }
  };
  place(place, 0);
  return images;
}

struct PatternCount {
  std::string canonical;
  Graph pattern;
  std::size_t edges = 0;
  std::size_t frequency = 0;
};

/// Every connected pattern with 1..max_pattern_edges edges occurring in `g`,
/// with its MNI support. Sorted by canonical form.
inline std::vector<PatternCount> brute_pattern_freqs(const Graph& g, std::size_t max_pattern_edges,
                                                     const EnumerationBudget& budget = {}) {
  std::map<std::string, Graph> patterns;
  for (const auto& s : enumerate_connected_subgraphs(g, Mode::edge_subgraph, budget, max_pattern_edges)) {
    if (s.edges.empty()) continue;
    auto p = as_pattern(g, s);
    patterns.try_emplace(canonical_form(p), std::move(p));
  }
  std::vector<PatternCount> out;
  for (auto& [canon, p] : patterns) {
    std::size_t f = std::numeric_limits<std::size_t>::max();
    for (const auto& img : brute_images(g, p, budget)) f = std::min(f, img.size());
    out.push_back({canon, p, p.edge_count(), f});
  }
  return out;
}

/// Sorts descending and keeps everything tied with the k-th value.
template <class T, class Key>
std::vector<T> top_k_with_ties(std::vector<T> items, std::size_t k, Key key) {
  std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) { return key(a) > key(b); });
  if (items.size() <= k) return items;
  auto bound = key(items[k - 1]);
  std::size_t end = k;
  while (end < items.size() && key(items[end]) == bound) ++end;
  items.resize(end);
  return items;
}

/// The k most frequent patterns with exactly `pattern_edges` edges.
inline std::vector<PatternCount> brute_topk_patterns(const Graph& g, std::size_t pattern_edges,
                                                     std::size_t k,
                                                     const EnumerationBudget& budget = {}) {
  std::vector<PatternCount> sized;
  for (auto& pc : brute_pattern_freqs(g, pattern_edges, budget)) {
    if (pc.edges == pattern_edges) sized.push_back(std::move(pc));
  }
  return top_k_with_ties(std::move(sized), k, [](const PatternCount& p) { return p.frequency; });
}

struct IsoMatch {
  FoundSubgraph subgraph;
  std::uint64_t score = 0;
};

/// Subgraphs isomorphic to `q`: a bijection preserving labels with query
/// edges exactly the subgraph's edges. Score is the sum of data degrees.
inline std::vector<IsoMatch> brute_iso_matches(const Graph& g, const Graph& q,
                                               const EnumerationBudget& budget = {}) {
  std::vector<IsoMatch> out;
  const auto nq = q.vertex_count();
  for (auto& s : enumerate_connected_subgraphs(g, Mode::edge_subgraph, budget, q.edge_count())) {
    if (s.vertices.size() != nq || s.edges.size() != q.edge_count()) continue;
    std::vector<VertexId> perm(nq);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    bool iso = false;
    do {
      // query vertex i -> s.vertices[perm[i]]
      bool ok = true;
      for (VertexId i = 0; i < nq && ok; ++i) {
        ok = q.label(i) == g.label(s.vertices[perm[i]]);
      }
      for (VertexId i = 0; i < nq && ok; ++i) {
        for (VertexId j = i + 1; j < nq && ok; ++j) {
          auto e = EdgeRef::of(s.vertices[perm[i]], s.vertices[perm[j]]);
          bool in_sub = std::binary_search(s.edges.begin(), s.edges.end(), e);
          bool in_query = q.has_edge(i, j);
          ok = in_sub == in_query &&
               (!in_query || *q.edge_label(i, j) == *g.edge_label(e.u, e.v));
        }
      }
      iso = ok;
    } while (!iso && std::next_permutation(perm.begin(), perm.end()));
    if (!iso) continue;
    std::uint64_t score = 0;
    for (auto v : s.vertices) score += g.degree(v);
    out.push_back({std::move(s), score});
  }
  return out;
}

/// Top-k match scores, descending, ties at the k-th retained.
inline std::vector<std::uint64_t> brute_topk_iso(const Graph& g, const Graph& q, std::size_t k,
                                                 const EnumerationBudget& budget = {}) {
  std::vector<std::uint64_t> scores;
  for (const auto& m : brute_iso_matches(g, q, budget)) scores.push_back(m.score);
  return top_k_with_ties(std::move(scores), k, [](std::uint64_t s) { return s; });
}

}  // namespace subquest::oracle
