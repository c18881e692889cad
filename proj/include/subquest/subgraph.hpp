#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "subquest/codec.hpp"
#include "subquest/graph.hpp"

namespace subquest {

/// Connected subgraph of the data graph. `vertices` keeps insertion order;
/// `ext` is the computation's extension state and is opaque to the engine.
template <class Ext>
struct Subgraph {
  std::vector<VertexId> vertices;
  std::vector<EdgeRef> edges;
  Ext ext{};

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }

  bool contains(VertexId v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }

  bool contains(EdgeRef e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
  }

  VertexId max_vertex() const { return *std::max_element(vertices.begin(), vertices.end()); }
};

/// Codec for the extension part of a subgraph payload.
template <class Ext>
struct ExtCodec;

struct NoExt {};

template <>
struct ExtCodec<NoExt> {
  static void encode(const NoExt&, ByteWriter&) {}
  static NoExt decode(ByteReader&) { return {}; }
};

/// Payload layout: u32 n; n x u32 vertices; u32 m; m x (u32,u32) edges;
/// u32 ext_len; ext bytes.
template <class Ext>
struct PayloadCodec<Subgraph<Ext>> {
  static void encode(const Subgraph<Ext>& s, ByteWriter& w) {
    w.put_u32(static_cast<std::uint32_t>(s.vertices.size()));
    for (auto v : s.vertices) w.put_u32(v);
    w.put_u32(static_cast<std::uint32_t>(s.edges.size()));
    for (auto e : s.edges) {
      w.put_u32(e.u);
      w.put_u32(e.v);
    }
    ByteWriter ext;
    ExtCodec<Ext>::encode(s.ext, ext);
    w.put_u32(static_cast<std::uint32_t>(ext.size()));
    w.put_bytes(ext.bytes());
  }

  static Subgraph<Ext> decode(ByteReader& r) {
    Subgraph<Ext> s;
    s.vertices.resize(r.get_u32());
    for (auto& v : s.vertices) v = r.get_u32();
    s.edges.resize(r.get_u32());
    for (auto& e : s.edges) {
      e.u = r.get_u32();
      e.v = r.get_u32();
    }
    auto ext_len = r.get_u32();
    ByteReader ext(r.get_bytes(ext_len));
    s.ext = ExtCodec<Ext>::decode(ext);
    if (ext.remaining() != 0) throw CorruptRecord("extension length mismatch");
    return s;
  }
};

/// Neighbors of the vertex set whose id exceeds every id already present.
/// Each vertex set is reachable through exactly one ascending insertion
/// order, so no set is generated twice. Complete for families closed under
/// removing the largest vertex (cliques are).
inline std::vector<VertexId> vertex_oriented_expansions(const Graph& g,
                                                        std::span<const VertexId> vertices) {
  if (vertices.empty()) return {};
  VertexId top = *std::max_element(vertices.begin(), vertices.end());
  std::vector<VertexId> out;
  for (VertexId v : vertices) {
    auto nb = g.neighbors(v);
    for (auto it = std::upper_bound(nb.begin(), nb.end(), top); it != nb.end(); ++it) {
      out.push_back(*it);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

/// Is the edge set connected once `skip` is removed? Vertices left without
/// edges disappear with it.
inline bool connected_without(std::span<const EdgeRef> edges, std::size_t skip) {
  std::vector<VertexId> verts;
  verts.reserve(edges.size() * 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip) continue;
    verts.push_back(edges[i].u);
    verts.push_back(edges[i].v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty()) return true;
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::size_t components = verts.size();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip) continue;
    auto a = find(index(edges[i].u));
    auto b = find(index(edges[i].v));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace detail

/// The edge whose removal yields the canonical parent of an edge set with at
/// least two edges: the largest edge whose removal keeps the rest connected.
inline EdgeRef canonical_last_edge(std::span<const EdgeRef> edges) {
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] > edges[b]; });
  for (auto i : order) {
    if (detail::connected_without(edges, i)) return edges[i];
  }
  throw Error("edge set is not connected");
}

/// Edges touching the subgraph, not yet in it, for which the subgraph is the
/// canonical parent of the child. A one-edge child's parent is the
/// single-vertex subgraph on its smaller endpoint. Ascending order.
inline std::vector<EdgeRef> edge_oriented_expansions(const Graph& g,
                                                     std::span<const VertexId> vertices,
                                                     std::span<const EdgeRef> edges) {
  std::vector<EdgeRef> candidates;
  for (VertexId v : vertices) {
    for (VertexId w : g.neighbors(v)) {
      auto e = EdgeRef::of(v, w);
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) candidates.push_back(e);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<EdgeRef> out;
  if (edges.empty()) {
    for (auto e : candidates) {
      if (vertices.size() == 1 && e.u == vertices.front()) out.push_back(e);
    }
    return out;
  }
  std::vector<EdgeRef> child(edges.begin(), edges.end());
  child.push_back({});
  for (auto e : candidates) {
    child.back() = e;
    // The parent is connected, so `e` itself is always removable; the child
    // belongs to this parent iff no larger edge is removable.
    bool larger_removable = false;
    for (std::size_t i = 0; i + 1 < child.size() && !larger_removable; ++i) {
      if (child[i] > e && detail::connected_without(child, i)) larger_removable = true;
    }
    if (!larger_removable) out.push_back(e);
  }
  return out;
}

}  // namespace subquest
