#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "subquest/codec.hpp"
#include "subquest/graph.hpp"
#include "subquest/priority.hpp"
#include "subquest/subgraph.hpp"
#include "subquest/vertex_index.hpp"

namespace subquest {

inline constexpr VertexId kUnmatched = std::numeric_limits<VertexId>::max();

/// Query vertex -> data vertex, `kUnmatched` where not yet matched.
using Mapping = std::vector<VertexId>;

/// Every partial injective map from the query consistent with the subgraph,
/// anchored at the seed vertex the subgraph grew from.
struct MatchState {
  VertexId seed = 0;
  std::vector<Mapping> mappings;
  /// Sum of data degrees over the subgraph's vertices.
  std::uint64_t score = 0;
  /// Upper bound on the score still obtainable from unmatched query vertices.
  std::uint64_t remaining_bound = 0;
};

using MatchSubgraph = Subgraph<MatchState>;

template <>
struct ExtCodec<MatchState> {
  static void encode(const MatchState& st, ByteWriter& w) {
    w.put_u32(st.seed);
    w.put_u64(st.score);
    w.put_u64(st.remaining_bound);
    w.put_u32(static_cast<std::uint32_t>(st.mappings.size()));
    w.put_u32(st.mappings.empty() ? 0 : static_cast<std::uint32_t>(st.mappings.front().size()));
    for (const auto& m : st.mappings) {
      for (auto v : m) w.put_u32(v);
    }
  }
  static MatchState decode(ByteReader& r) {
    MatchState st;
    st.seed = r.get_u32();
    st.score = r.get_u64();
    st.remaining_bound = r.get_u64();
    st.mappings.resize(r.get_u32());
    auto width = r.get_u32();
    for (auto& m : st.mappings) {
      m.resize(width);
      for (auto& v : m) v = r.get_u32();
    }
    return st;
  }
};

inline std::uint64_t iso_score(const MatchSubgraph& s) { return s.ext.score; }

/// score + u: the best score any expansion of `s` can reach.
inline std::uint64_t iso_upper_bound(const MatchSubgraph& s) {
  return s.ext.score + s.ext.remaining_bound;
}

/// Data-graph distances from seed vertices, truncated at a radius and
/// computed on first use. Thread-safe.
class SeedDistances {
 public:
  explicit SeedDistances(std::size_t radius) : radius_(radius) {}

  /// Distance from `seed` to `v`, or nullopt beyond the radius.
  std::optional<std::size_t> operator()(const Graph& g, VertexId seed, VertexId v) {
    std::lock_guard lock(mutex_);
    auto it = balls_.find(seed);
    if (it == balls_.end()) it = balls_.emplace(seed, ball(g, seed)).first;
    const auto& b = it->second;
    auto pos = std::lower_bound(b.begin(), b.end(), std::pair{v, std::size_t{0}});
    if (pos == b.end() || pos->first != v) return std::nullopt;
    return pos->second;
  }

 private:
  std::vector<std::pair<VertexId, std::size_t>> ball(const Graph& g, VertexId seed) const {
    std::vector<std::pair<VertexId, std::size_t>> out{{seed, 0}};
    std::vector<VertexId> frontier{seed}, next;
    std::unordered_map<VertexId, std::size_t> seen{{seed, 0}};
    for (std::size_t d = 1; d <= radius_ && !frontier.empty(); ++d) {
      next.clear();
      for (auto v : frontier) {
        for (auto w : g.neighbors(v)) {
          if (seen.emplace(w, d).second) {
            out.emplace_back(w, d);
            next.push_back(w);
          }
        }
      }
      std::swap(frontier, next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t radius_;
  std::mutex mutex_;
  std::unordered_map<VertexId, std::vector<std::pair<VertexId, std::size_t>>> balls_;
};

/// Top-k subgraph isomorphism. Subgraphs grow one edge at a time from a seed
/// vertex and are kept only while some partial map into the query survives.
/// Priority is (edges, score + u) where u sums, over unmatched query vertices,
/// the index's best degree for that label within the vertex's query distance
/// of the seed.
class IsoComputation {
 public:
  using subgraph_type = MatchSubgraph;
  using delta_type = EdgeRef;

  IsoComputation(const Graph& query, const VertexIndex& index) : query_(&query), index_(&index) {
    const auto n = query.vertex_count();
    if (n == 0) throw Error("query graph is empty");
    hops_.assign(n, std::vector<std::size_t>(n, kFar));
    for (VertexId s = 0; s < n; ++s) {
      auto& d = hops_[s];
      d[s] = 0;
      std::vector<VertexId> queue{s};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        auto v = queue[head];
        for (auto w : query.neighbors(v)) {
          if (d[w] == kFar) {
            d[w] = d[v] + 1;
            queue.push_back(w);
          }
        }
      }
      for (auto x : d) {
        if (x == kFar) throw Error("query graph is disconnected");
        if (x > index.max_hops()) {
          throw Error("query needs hop " + std::to_string(x) + " but the index only covers " +
                      std::to_string(index.max_hops()));
        }
      }
    }
    distances_ = std::make_shared<SeedDistances>(required_hops(query));
  }

  /// Largest query distance, i.e. the index depth this query needs.
  static std::size_t required_hops(const Graph& query) {
    std::size_t best = 1;
    for (VertexId s = 0; s < query.vertex_count(); ++s) {
      std::vector<std::size_t> d(query.vertex_count(), kFar);
      d[s] = 0;
      std::vector<VertexId> queue{s};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (auto w : query.neighbors(queue[head])) {
          if (d[w] == kFar) {
            d[w] = d[queue[head]] + 1;
            best = std::max(best, d[w]);
            queue.push_back(w);
          }
        }
      }
    }
    return best;
  }

  const Graph& query() const noexcept { return *query_; }

  std::vector<MatchSubgraph> units(const Graph& g) const {
    if (index_->vertex_count() > g.vertex_count()) throw Error("index does not match the data graph");
    std::vector<MatchSubgraph> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      MatchSubgraph s;
      s.vertices = {v};
      s.ext.seed = v;
      s.ext.score = g.degree(v);
      for (VertexId q = 0; q < query_->vertex_count(); ++q) {
        if (query_->label(q) != g.label(v)) continue;
        Mapping m(query_->vertex_count(), kUnmatched);
        m[q] = v;
        if (remaining_bound(v, m)) s.ext.mappings.push_back(std::move(m));
      }
      if (s.ext.mappings.empty()) continue;
      s.ext.remaining_bound = best_remaining(s.ext.seed, s.ext.mappings);
      out.push_back(std::move(s));
    }
    return out;
  }

  std::vector<EdgeRef> expansions(const Graph& g, const MatchSubgraph& s) const {
    if (s.edge_count() >= query_->edge_count()) return {};
    return edge_oriented_expansions(g, s.vertices, s.edges);
  }

  /// True when adding `e` (and its new endpoint) keeps a partial match that
  /// can still complete.
  bool expandable(const Graph& g, const MatchSubgraph& s, EdgeRef e) const {
    if (s.edge_count() >= query_->edge_count()) return false;
    return !extend(g, s, e).empty();
  }

  MatchSubgraph expand(const Graph& g, const MatchSubgraph& s, EdgeRef e) const {
    MatchSubgraph child;
    child.vertices = s.vertices;
    child.edges = s.edges;
    child.edges.push_back(e);
    child.ext.seed = s.ext.seed;
    child.ext.score = s.ext.score;
    const bool has_u = s.contains(e.u);
    const bool has_v = s.contains(e.v);
    if (!has_u || !has_v) {
      VertexId w = has_u ? e.v : e.u;
      child.vertices.push_back(w);
      child.ext.score += g.degree(w);
    }
    child.ext.mappings = extend(g, s, e);
    child.ext.remaining_bound = best_remaining(child.ext.seed, child.ext.mappings);
    return child;
  }

  /// Isomorphic to the query: every query edge is used and some map is total.
  bool relevant(const MatchSubgraph& s) const {
    if (s.edge_count() != query_->edge_count() || s.vertex_count() != query_->vertex_count()) {
      return false;
    }
    return std::any_of(s.ext.mappings.begin(), s.ext.mappings.end(), [](const Mapping& m) {
      return std::find(m.begin(), m.end(), kUnmatched) == m.end();
    });
  }

  Priority priority(const MatchSubgraph& s) const {
    return {static_cast<double>(s.edge_count()), static_cast<double>(iso_upper_bound(s))};
  }

  bool dominated(const MatchSubgraph& s, const MatchSubgraph& other) const {
    return iso_upper_bound(s) < iso_score(other);
  }

  /// u for one mapping; nullopt when some unmatched query vertex has no
  /// candidate of its label within reach of the seed.
  std::optional<std::uint64_t> remaining_bound(VertexId seed, const Mapping& m) const {
    auto anchor = std::find(m.begin(), m.end(), seed);
    if (anchor == m.end()) throw Error("mapping does not cover the seed vertex");
    const auto& dist = hops_[static_cast<std::size_t>(anchor - m.begin())];
    std::uint64_t total = 0;
    for (VertexId q = 0; q < m.size(); ++q) {
      if (m[q] != kUnmatched) continue;
      // A non-induced match can sit closer to the seed than its query
      // distance, never farther; take every shell up to that distance.
      auto best = index_->lookup_within(seed, dist[q], query_->label(q));
      if (!best) return std::nullopt;
      total += *best;
    }
    return total;
  }

 private:
  static constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

  std::uint64_t best_remaining(VertexId seed, const std::vector<Mapping>& ms) const {
    std::uint64_t best = 0;
    for (const auto& m : ms) best = std::max(best, remaining_bound(seed, m).value_or(0));
    return best;
  }

  static VertexId query_vertex_of(const Mapping& m, VertexId data) {
    auto it = std::find(m.begin(), m.end(), data);
    return it == m.end() ? kUnmatched : static_cast<VertexId>(it - m.begin());
  }

  std::vector<Mapping> extend(const Graph& g, const MatchSubgraph& s, EdgeRef e) const {
    std::vector<Mapping> out;
    const bool has_u = s.contains(e.u);
    const bool has_v = s.contains(e.v);
    const Label el = *g.edge_label(e.u, e.v);
    if (has_u && has_v) {
      for (const auto& m : s.ext.mappings) {
        auto qa = query_vertex_of(m, e.u);
        auto qb = query_vertex_of(m, e.v);
        if (query_->has_edge(qa, qb) && *query_->edge_label(qa, qb) == el) out.push_back(m);
      }
      return out;
    }
    const VertexId inside = has_u ? e.u : e.v;
    const VertexId fresh = has_u ? e.v : e.u;
    for (const auto& m : s.ext.mappings) {
      auto qx = query_vertex_of(m, inside);
      const auto& dist = hops_[static_cast<std::size_t>(query_vertex_of(m, s.ext.seed))];
      for (auto q : query_->neighbors(qx)) {
        if (m[q] != kUnmatched || query_->label(q) != g.label(fresh)) continue;
        if (*query_->edge_label(qx, q) != el) continue;
        // In a complete match the data distance from the seed never exceeds
        // the query distance.
        auto reach = (*distances_)(g, s.ext.seed, fresh);
        if (!reach || *reach > dist[q]) continue;
        Mapping next = m;
        next[q] = fresh;
        if (remaining_bound(s.ext.seed, next)) out.push_back(std::move(next));
      }
    }
    return out;
  }

  const Graph* query_;
  const VertexIndex* index_;
  std::vector<std::vector<std::size_t>> hops_;
  std::shared_ptr<SeedDistances> distances_;
};

}  // namespace subquest
