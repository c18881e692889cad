#pragma once

#include <algorithm>
#include <iterator>
#include <span>
#include <vector>

#include "subquest/codec.hpp"
#include "subquest/graph.hpp"
#include "subquest/priority.hpp"
#include "subquest/subgraph.hpp"

namespace subquest {

/// Candidate set P_s: vertices that keep the subgraph a clique when added.
/// Ascending, and restricted to ids above every vertex already present.
struct CliqueState {
  std::vector<VertexId> candidates;
};

using CliqueSubgraph = Subgraph<CliqueState>;

template <>
struct ExtCodec<CliqueState> {
  static void encode(const CliqueState& st, ByteWriter& w) {
    w.put_u32(static_cast<std::uint32_t>(st.candidates.size()));
    for (auto v : st.candidates) w.put_u32(v);
  }
  static CliqueState decode(ByteReader& r) {
    CliqueState st;
    st.candidates.resize(r.get_u32());
    for (auto& v : st.candidates) v = r.get_u32();
    return st;
  }
};

/// Recomputes P_s from scratch: start from the neighbors of the first
/// vertex, then for every later vertex drop it and keep only its neighbors.
/// The result is restricted to ids greater than max(V_s).
inline std::vector<VertexId> clique_candidates(const Graph& g, std::span<const VertexId> vertices) {
  if (vertices.empty()) return {};
  auto first = g.neighbors(vertices.front());
  std::vector<VertexId> p(first.begin(), first.end());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    VertexId v = vertices[i];
    std::erase(p, v);
    auto nb = g.neighbors(v);
    std::vector<VertexId> kept;
    std::set_intersection(p.begin(), p.end(), nb.begin(), nb.end(), std::back_inserter(kept));
    p = std::move(kept);
  }
  VertexId top = *std::max_element(vertices.begin(), vertices.end());
  std::erase_if(p, [&](VertexId x) { return x <= top; });
  return p;
}

/// (|V_s|, |P_s|)
inline Priority clique_priority(const CliqueSubgraph& s) {
  return {static_cast<double>(s.vertex_count()), static_cast<double>(s.ext.candidates.size())};
}

/// True when even absorbing every candidate cannot reach the size of `other`.
inline bool clique_dominated(const CliqueSubgraph& s, const CliqueSubgraph& other) {
  return s.vertex_count() + s.ext.candidates.size() < other.vertex_count();
}

/// Maximum-clique search with vertex-oriented expansion restricted to the
/// candidate set, so every constructed subgraph is a clique.
class CliqueComputation {
 public:
  using subgraph_type = CliqueSubgraph;
  using delta_type = VertexId;

  std::vector<CliqueSubgraph> units(const Graph& g) const {
    std::vector<CliqueSubgraph> out;
    out.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      auto nb = g.neighbors(v);
      CliqueSubgraph s;
      s.vertices = {v};
      s.ext.candidates.assign(std::upper_bound(nb.begin(), nb.end(), v), nb.end());
      out.push_back(std::move(s));
    }
    return out;
  }

  std::vector<VertexId> expansions(const Graph& g, const CliqueSubgraph& s) const {
    return vertex_oriented_expansions(g, s.vertices);
  }

  bool expandable(const Graph&, const CliqueSubgraph& s, VertexId v) const {
    return std::binary_search(s.ext.candidates.begin(), s.ext.candidates.end(), v);
  }

  /// Adds `v` with its edges into the clique; the child's candidates are the
  /// parent's intersected with N(v), above v.
  CliqueSubgraph expand(const Graph& g, const CliqueSubgraph& s, VertexId v) const {
    CliqueSubgraph child;
    child.vertices = s.vertices;
    child.vertices.push_back(v);
    child.edges = s.edges;
    for (VertexId u : s.vertices) {
      if (g.has_edge(u, v)) child.edges.push_back(EdgeRef::of(u, v));
    }
    auto nb = g.neighbors(v);
    auto from = std::upper_bound(s.ext.candidates.begin(), s.ext.candidates.end(), v);
    std::set_intersection(from, s.ext.candidates.end(), nb.begin(), nb.end(),
                          std::back_inserter(child.ext.candidates));
    return child;
  }

  bool relevant(const CliqueSubgraph&) const { return true; }
  Priority priority(const CliqueSubgraph& s) const { return clique_priority(s); }
  bool dominated(const CliqueSubgraph& s, const CliqueSubgraph& other) const {
    return clique_dominated(s, other);
  }
};

}  // namespace subquest
