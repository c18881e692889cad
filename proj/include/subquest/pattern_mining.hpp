#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "subquest/codec.hpp"
#include "subquest/dfs_code.hpp"
#include "subquest/graph.hpp"
#include "subquest/priority.hpp"
#include "subquest/subgraph.hpp"

namespace subquest {

/// An embedding of a DFS code: `vertices[t]` is the data vertex for code
/// vertex t and `edges[i]` realizes tuple i.
struct PatternState {
  std::shared_ptr<const DfsCode> code;
};

using PatternSubgraph = Subgraph<PatternState>;

template <>
struct ExtCodec<PatternState> {
  // The code travels with the group, not with each member.
  static void encode(const PatternState&, ByteWriter&) {}
  static PatternState decode(ByteReader&) { return {}; }
};

struct PatternExtension {
  EdgeRef edge;
  DfsEdge tuple;
};

/// Memoizes `is_minimal` per code. Thread-safe.
class MinimalityCache {
 public:
  bool operator()(const DfsCode& code) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = known_.find(code); it != known_.end()) return it->second;
    }
    bool minimal = is_minimal(code);
    std::lock_guard lock(mutex_);
    known_.emplace(code, minimal);
    return minimal;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return known_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::map<DfsCode, bool> known_;
};

/// Rightmost-path extensions of an embedding whose child code is minimal:
/// backward edges from the rightmost vertex first, then forward edges from
/// the rightmost vertex up to the root.
inline std::vector<PatternExtension> pattern_expansions(const Graph& g, const PatternSubgraph& s,
                                                        MinimalityCache& minimal) {
  const DfsCode& code = *s.ext.code;
  const auto path = code.rightmost_path();
  const int rightmost = path.front();
  const int next_id = static_cast<int>(code.vertex_count());
  const VertexId rv = s.vertices[static_cast<std::size_t>(rightmost)];
  std::vector<PatternExtension> out;
  auto accept = [&](EdgeRef e, const DfsEdge& t) {
    DfsCode child = code;
    child.push_back(t);
    if (minimal(child)) out.push_back({e, t});
  };
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (*it == rightmost) continue;
    const VertexId jv = s.vertices[static_cast<std::size_t>(*it)];
    auto e = EdgeRef::of(rv, jv);
    if (g.has_edge(rv, jv) && !s.contains(e)) {
      accept(e, {rightmost, *it, g.label(rv), *g.edge_label(rv, jv), g.label(jv)});
    }
  }
  for (int i : path) {
    const VertexId iv = s.vertices[static_cast<std::size_t>(i)];
    for (VertexId w : g.neighbors(iv)) {
      if (s.contains(w)) continue;
      accept(EdgeRef::of(iv, w), {i, next_id, g.label(iv), *g.edge_label(iv, w), g.label(w)});
    }
  }
  return out;
}

/// Embeddings sharing one minimal DFS code, with the image set of every
/// pattern vertex maintained as members join.
class PatternGroup {
 public:
  explicit PatternGroup(DfsCode key)
      : key_(std::make_shared<const DfsCode>(std::move(key))), images_(key_->vertex_count()) {}

  const DfsCode& key() const noexcept { return *key_; }
  const std::shared_ptr<const DfsCode>& shared_key() const noexcept { return key_; }
  const std::vector<PatternSubgraph>& members() const noexcept { return members_; }
  const std::vector<std::set<VertexId>>& images() const noexcept { return images_; }
  std::size_t edge_count() const noexcept { return key_->size(); }

  void add(PatternSubgraph s) {
    if (s.vertices.size() != images_.size()) throw Error("embedding does not match group pattern");
    s.ext.code = key_;
    for (std::size_t t = 0; t < images_.size(); ++t) images_[t].insert(s.vertices[t]);
    members_.push_back(std::move(s));
  }

  /// Minimum image-based support.
  std::size_t frequency() const {
    if (members_.empty()) return 0;
    std::size_t f = images_.front().size();
    for (const auto& img : images_) f = std::min(f, img.size());
    return f;
  }

 private:
  std::shared_ptr<const DfsCode> key_;
  std::vector<PatternSubgraph> members_;
  std::vector<std::set<VertexId>> images_;
};

inline std::size_t mni_support(const PatternGroup& grp) { return grp.frequency(); }

/// Payload: u32 tuple_count; tuple_count x 5 x i32; u32 member_count;
/// members in subgraph payload layout (empty extension).
template <>
struct PayloadCodec<PatternGroup> {
  static void encode(const PatternGroup& grp, ByteWriter& w) {
    w.put_u32(static_cast<std::uint32_t>(grp.key().size()));
    for (const auto& e : grp.key().edges()) {
      w.put_i32(e.from);
      w.put_i32(e.to);
      w.put_i32(e.from_label);
      w.put_i32(e.edge_label);
      w.put_i32(e.to_label);
    }
    w.put_u32(static_cast<std::uint32_t>(grp.members().size()));
    for (const auto& m : grp.members()) PayloadCodec<PatternSubgraph>::encode(m, w);
  }

  static PatternGroup decode(ByteReader& r) {
    std::vector<DfsEdge> tuples(r.get_u32());
    for (auto& e : tuples) {
      e.from = r.get_i32();
      e.to = r.get_i32();
      e.from_label = r.get_i32();
      e.edge_label = r.get_i32();
      e.to_label = r.get_i32();
    }
    PatternGroup grp{DfsCode(std::move(tuples))};
    auto count = r.get_u32();
    for (std::uint32_t i = 0; i < count; ++i) grp.add(PayloadCodec<PatternSubgraph>::decode(r));
    return grp;
  }
};

/// Top-k frequent M-edge patterns under MNI support, using pattern-oriented
/// expansion. Priority is (edges, frequency); a group is dominated when its
/// frequency is below the other's, which is sound because MNI support is
/// anti-monotone.
class MiningComputation {
 public:
  using subgraph_type = PatternSubgraph;
  using delta_type = PatternExtension;
  using key_type = DfsCode;
  using group_type = PatternGroup;

  explicit MiningComputation(std::size_t max_edges)
      : max_edges_(max_edges), minimal_(std::make_shared<MinimalityCache>()) {
    if (max_edges == 0) throw std::invalid_argument("pattern size must be at least one edge");
  }

  std::size_t max_edges() const noexcept { return max_edges_; }

  /// One-edge embeddings whose code is minimal: one orientation per edge,
  /// both when the endpoint labels are equal.
  std::vector<PatternSubgraph> units(const Graph& g) const {
    std::vector<PatternSubgraph> out;
    for (auto e : g.edges()) {
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        DfsCode code({DfsEdge{0, 1, g.label(a), *g.edge_label(a, b), g.label(b)}});
        if (!(*minimal_)(code)) continue;
        PatternSubgraph s;
        s.vertices = {a, b};
        s.edges = {e};
        s.ext.code = std::make_shared<const DfsCode>(std::move(code));
        out.push_back(std::move(s));
      }
    }
    return out;
  }

  DfsCode key(const PatternSubgraph& s) const { return *s.ext.code; }
  PatternGroup make_group(const DfsCode& key) const { return PatternGroup(key); }
  void add_member(PatternGroup& grp, PatternSubgraph&& s) const { grp.add(std::move(s)); }
  const std::vector<PatternSubgraph>& members(const PatternGroup& grp) const { return grp.members(); }

  std::vector<PatternExtension> expansions(const Graph& g, const PatternSubgraph& s) const {
    if (s.edge_count() >= max_edges_) return {};
    return pattern_expansions(g, s, *minimal_);
  }

  bool expandable(const Graph&, const PatternSubgraph& s, const PatternExtension&) const {
    return s.edge_count() < max_edges_;
  }

  PatternSubgraph expand(const Graph&, const PatternSubgraph& s, const PatternExtension& x) const {
    PatternSubgraph child;
    child.vertices = s.vertices;
    if (x.tuple.forward()) child.vertices.push_back(x.edge.other(s.vertices[static_cast<std::size_t>(x.tuple.from)]));
    child.edges = s.edges;
    child.edges.push_back(x.edge);
    auto code = std::make_shared<DfsCode>(*s.ext.code);
    code->push_back(x.tuple);
    child.ext.code = std::move(code);
    return child;
  }

  bool relevant(const PatternGroup& grp) const { return grp.edge_count() == max_edges_; }

  Priority priority(const PatternGroup& grp) const {
    return {static_cast<double>(grp.edge_count()), static_cast<double>(grp.frequency())};
  }

  bool dominated(const PatternGroup& grp, const PatternGroup& other) const {
    return grp.frequency() < other.frequency();
  }

  const MinimalityCache& minimality_cache() const noexcept { return *minimal_; }

 private:
  std::size_t max_edges_;
  std::shared_ptr<MinimalityCache> minimal_;
};

}  // namespace subquest
