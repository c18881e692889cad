#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "subquest/error.hpp"
#include "subquest/graph.hpp"

namespace subquest {

struct IndexEntry {
  std::uint32_t hop = 0;
  Label label = 0;
  std::uint64_t max_degree = 0;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// For every vertex s, hop d in 1..D and label l: the maximum degree over
/// vertices with label l at shortest-path distance exactly d from s.
class VertexIndex {
 public:
  VertexIndex() = default;
  VertexIndex(std::size_t max_hops, std::vector<std::vector<IndexEntry>> per_vertex)
      : max_hops_(max_hops), entries_(std::move(per_vertex)) {}

  std::size_t max_hops() const noexcept { return max_hops_; }
  std::size_t vertex_count() const noexcept { return entries_.size(); }

  std::span<const IndexEntry> entries(VertexId v) const {
    if (v >= entries_.size()) return {};
    return entries_[v];
  }

  /// Exact-distance shell lookup.
  std::optional<std::uint64_t> lookup(VertexId v, std::size_t hop, Label label) const {
    auto es = entries(v);
    auto it = std::lower_bound(es.begin(), es.end(), std::pair{hop, label},
                               [](const IndexEntry& e, const auto& key) {
                                 return std::pair{static_cast<std::size_t>(e.hop), e.label} < key;
                               });
    if (it == es.end() || it->hop != hop || it->label != label) return std::nullopt;
    return it->max_degree;
  }

  /// Maximum over the shells 1..hop.
  std::optional<std::uint64_t> lookup_within(VertexId v, std::size_t hop, Label label) const {
    std::optional<std::uint64_t> best;
    for (const auto& e : entries(v)) {
      if (e.hop <= hop && e.label == label) best = std::max(best.value_or(0), e.max_degree);
    }
    return best;
  }

  friend bool operator==(const VertexIndex&, const VertexIndex&) = default;

 private:
  std::size_t max_hops_ = 0;
  std::vector<std::vector<IndexEntry>> entries_;
};

namespace detail {

inline std::vector<IndexEntry> index_one(const Graph& g, VertexId source, std::size_t hops,
                                         std::vector<std::uint32_t>& dist,
                                         std::vector<VertexId>& touched) {
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::map<std::pair<std::uint32_t, Label>, std::uint64_t> best;
  std::vector<VertexId> frontier{source}, next;
  dist[source] = 0;
  touched.push_back(source);
  for (std::uint32_t d = 1; d <= hops && !frontier.empty(); ++d) {
    next.clear();
    for (VertexId v : frontier) {
      for (VertexId w : g.neighbors(v)) {
        if (dist[w] != kUnseen) continue;
        dist[w] = d;
        touched.push_back(w);
        next.push_back(w);
        auto& slot = best[{d, g.label(w)}];
        slot = std::max<std::uint64_t>(slot, g.degree(w));
      }
    }
    std::swap(frontier, next);
  }
  for (VertexId v : touched) dist[v] = kUnseen;
  touched.clear();
  std::vector<IndexEntry> out;
  out.reserve(best.size());
  for (const auto& [key, deg] : best) out.push_back({key.first, key.second, deg});
  return out;
}

}  // namespace detail

/// BFS to depth `hops` from every vertex. Sources are split into contiguous
/// blocks across `threads`; the result does not depend on the thread count.
inline VertexIndex build_index(const Graph& g, std::size_t hops, unsigned threads = 1) {
  if (hops < 1) throw std::invalid_argument("index depth must be at least 1");
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<IndexEntry>> per_vertex(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> dist(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<VertexId> touched;
    for (std::size_t v = begin; v < end; ++v) {
      per_vertex[v] = detail::index_one(g, static_cast<VertexId>(v), hops, dist, touched);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      pool.emplace_back(work, begin, std::min(n, begin + chunk));
    }
  }
  return VertexIndex(hops, std::move(per_vertex));
}

/// Header `D <hops>`, then `<vertex> <hop> <label> <maxdeg>` lines sorted by
/// (vertex, hop, label).
inline void write_index(std::ostream& out, const VertexIndex& idx) {
  out << "D " << idx.max_hops() << '\n';
  for (VertexId v = 0; v < idx.vertex_count(); ++v) {
    for (const auto& e : idx.entries(v)) {
      out << v << ' ' << e.hop << ' ' << e.label << ' ' << e.max_degree << '\n';
    }
  }
}

inline VertexIndex read_index(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> hops;
  std::vector<std::vector<IndexEntry>> per_vertex;
  std::tuple<std::int64_t, std::int64_t, std::int64_t> last{-1, -1, -1};
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (!hops) {
      if (toks.size() != 2 || toks[0] != "D") throw ParseError(lineno, "expected header 'D <hops>'");
      auto d = detail::parse_int(toks[1], lineno);
      if (d < 1) throw ParseError(lineno, "index depth must be at least 1");
      hops = static_cast<std::size_t>(d);
      continue;
    }
    if (toks.size() != 4) throw ParseError(lineno, "expected '<vertex> <hop> <label> <maxdeg>'");
    auto v = detail::parse_int(toks[0], lineno);
    auto h = detail::parse_int(toks[1], lineno);
    auto l = detail::parse_int(toks[2], lineno);
    auto deg = detail::parse_int(toks[3], lineno);
    if (v < 0 || h < 1 || static_cast<std::size_t>(h) > *hops || l < 0 || deg < 0) {
      throw ParseError(lineno, "index field out of range");
    }
    std::tuple<std::int64_t, std::int64_t, std::int64_t> key{v, h, l};
    if (!(last < key)) throw ParseError(lineno, "index lines must be strictly sorted");
    last = key;
    if (static_cast<std::size_t>(v) >= per_vertex.size()) per_vertex.resize(static_cast<std::size_t>(v) + 1);
    per_vertex[static_cast<std::size_t>(v)].push_back(
        {static_cast<std::uint32_t>(h), static_cast<Label>(l), static_cast<std::uint64_t>(deg)});
  }
  if (!hops) throw ParseError(0, "empty index file");
  return VertexIndex(*hops, std::move(per_vertex));
}

}  // namespace subquest
