#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "subquest/error.hpp"
#include "subquest/graph.hpp"

namespace subquest {

/// One DFS code tuple (i, j, L(i), L(i,j), L(j)). Forward when i < j.
struct DfsEdge {
  int from = 0;
  int to = 0;
  Label from_label = 0;
  Label edge_label = 0;
  Label to_label = 0;

  constexpr bool forward() const noexcept { return from < to; }

  // Plain field order; only used for keys and equality, not canonicity.
  friend constexpr auto operator<=>(const DfsEdge&, const DfsEdge&) = default;
};

/// Edge order for tuples at the same position of two codes with equal
/// prefixes: backward before forward; backward edges by smaller target;
/// forward edges by larger (deeper) source; then labels lexicographically.
inline bool dfs_edge_less(const DfsEdge& a, const DfsEdge& b) {
  const bool af = a.forward();
  const bool bf = b.forward();
  if (af != bf) return !af;
  if (!af) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
  } else {
    if (a.to != b.to) return a.to < b.to;
    if (a.from != b.from) return a.from > b.from;
  }
  return std::tie(a.from_label, a.edge_label, a.to_label) <
         std::tie(b.from_label, b.edge_label, b.to_label);
}

/// Sequence of DFS tuples describing a connected pattern.
class DfsCode {
 public:
  DfsCode() = default;
  explicit DfsCode(std::vector<DfsEdge> edges) : edges_(std::move(edges)) {}

  std::span<const DfsEdge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  const DfsEdge& operator[](std::size_t i) const { return edges_.at(i); }
  const DfsEdge& back() const { return edges_.back(); }

  std::size_t vertex_count() const noexcept {
    int top = -1;
    for (const auto& e : edges_) top = std::max({top, e.from, e.to});
    return static_cast<std::size_t>(top + 1);
  }

  Label vertex_label(int v) const {
    for (const auto& e : edges_) {
      if (e.from == v) return e.from_label;
      if (e.to == v) return e.to_label;
    }
    throw std::out_of_range("code vertex " + std::to_string(v) + " not present");
  }

  /// Code vertex ids from the rightmost vertex back to the root.
  std::vector<int> rightmost_path() const {
    if (edges_.empty()) return {};
    std::vector<int> parent(vertex_count(), -1);
    for (const auto& e : edges_) {
      if (e.forward()) parent[static_cast<std::size_t>(e.to)] = e.from;
    }
    std::vector<int> path;
    for (int v = static_cast<int>(vertex_count()) - 1; v >= 0; v = parent[static_cast<std::size_t>(v)]) {
      path.push_back(v);
    }
    return path;
  }

  bool has_edge_between(int a, int b) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const DfsEdge& e) {
      return (e.from == a && e.to == b) || (e.from == b && e.to == a);
    });
  }

  void push_back(const DfsEdge& e) { edges_.push_back(e); }

  friend auto operator<=>(const DfsCode&, const DfsCode&) = default;
  friend bool operator==(const DfsCode&, const DfsCode&) = default;

 private:
  std::vector<DfsEdge> edges_;
};

/// `(i,j,Li,Le,Lj)` tuples joined by `;`.
inline std::string to_string(const DfsCode& code) {
  std::string out;
  for (std::size_t k = 0; k < code.size(); ++k) {
    const auto& e = code[k];
    if (k) out += ';';
    out += '(' + std::to_string(e.from) + ',' + std::to_string(e.to) + ',' +
           std::to_string(e.from_label) + ',' + std::to_string(e.edge_label) + ',' +
           std::to_string(e.to_label) + ')';
  }
  return out;
}

/// Appends one rightmost-path extension, validating it.
inline DfsCode code_of_child(const DfsCode& parent, const DfsEdge& e) {
  if (parent.empty()) {
    if (e.from != 0 || e.to != 1) throw InvalidExtension("first tuple must be (0,1,...)");
    return DfsCode({e});
  }
  const auto path = parent.rightmost_path();
  const int rightmost = path.front();
  auto on_path = [&](int v) { return std::find(path.begin(), path.end(), v) != path.end(); };
  if (e.forward()) {
    if (e.to != static_cast<int>(parent.vertex_count())) {
      throw InvalidExtension("forward tuple must introduce the next vertex id");
    }
    if (!on_path(e.from)) throw InvalidExtension("forward tuple must start on the rightmost path");
    if (parent.vertex_label(e.from) != e.from_label) throw InvalidExtension("source label mismatch");
  } else {
    if (e.from != rightmost) throw InvalidExtension("backward tuple must start at the rightmost vertex");
    if (e.to == e.from || !on_path(e.to)) {
      throw InvalidExtension("backward tuple must end on the rightmost path");
    }
    if (parent.has_edge_between(e.from, e.to)) throw InvalidExtension("edge already in code");
    if (parent.vertex_label(e.from) != e.from_label || parent.vertex_label(e.to) != e.to_label) {
      throw InvalidExtension("endpoint label mismatch");
    }
  }
  DfsCode child = parent;
  child.push_back(e);
  return child;
}

/// The pattern graph a code describes (edge labels always present).
inline Graph graph_of(const DfsCode& code) {
  const auto n = code.vertex_count();
  std::vector<Label> labels(n, 0);
  std::vector<LabeledEdge> edges;
  for (const auto& e : code.edges()) {
    labels[static_cast<std::size_t>(e.from)] = e.from_label;
    labels[static_cast<std::size_t>(e.to)] = e.to_label;
    edges.push_back({static_cast<VertexId>(e.from), static_cast<VertexId>(e.to), e.edge_label});
  }
  return Graph::build(n, edges, std::move(labels), true);
}

namespace detail {

struct CodeProjection {
  std::vector<VertexId> code_to_pattern;
  std::vector<int> pattern_to_code;
  std::vector<EdgeRef> used;

  bool uses(EdgeRef e) const { return std::find(used.begin(), used.end(), e) != used.end(); }
};

}  // namespace detail

/// Minimum DFS code of a connected pattern, built greedily: at each step take
/// the smallest rightmost-path extension over every traversal that produced
/// the current minimal prefix.
inline DfsCode min_dfs_code(const Graph& pattern) {
  using detail::CodeProjection;
  const auto n = pattern.vertex_count();
  const auto m = pattern.edge_count();
  if (m == 0) throw Error("pattern has no edges");
  {
    // Connectivity, isolated vertices included.
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : pattern.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) throw Error("pattern is disconnected");
  }
  auto elabel = [&](VertexId a, VertexId b) { return *pattern.edge_label(a, b); };

  DfsCode code;
  std::vector<CodeProjection> projections;
  {
    std::optional<DfsEdge> best;
    for (auto e : pattern.edges()) {
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        DfsEdge t{0, 1, pattern.label(a), elabel(a, b), pattern.label(b)};
        if (!best || dfs_edge_less(t, *best)) {
          best = t;
          projections.clear();
        }
        if (t == *best) {
          CodeProjection p;
          p.code_to_pattern = {a, b};
          p.pattern_to_code.assign(n, -1);
          p.pattern_to_code[a] = 0;
          p.pattern_to_code[b] = 1;
          p.used = {e};
          projections.push_back(std::move(p));
        }
      }
    }
    code.push_back(*best);
  }

  while (code.size() < m) {
    const auto path = code.rightmost_path();
    const int rightmost = path.front();
    const int next_id = static_cast<int>(code.vertex_count());
    std::optional<DfsEdge> best;
    std::vector<CodeProjection> next;
    auto consider = [&](const CodeProjection& p, const DfsEdge& t, EdgeRef used, std::optional<VertexId> added) {
      if (best && dfs_edge_less(*best, t)) return;
      if (!best || dfs_edge_less(t, *best)) {
        best = t;
        next.clear();
      }
      CodeProjection q = p;
      q.used.push_back(used);
      if (added) {
        q.code_to_pattern.push_back(*added);
        q.pattern_to_code[*added] = next_id;
      }
      next.push_back(std::move(q));
    };
    for (const auto& p : projections) {
      const VertexId pr = p.code_to_pattern[static_cast<std::size_t>(rightmost)];
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (*it == rightmost) continue;
        const VertexId pj = p.code_to_pattern[static_cast<std::size_t>(*it)];
        auto e = EdgeRef::of(pr, pj);
        if (pattern.has_edge(pr, pj) && !p.uses(e)) {
          consider(p, {rightmost, *it, pattern.label(pr), elabel(pr, pj), pattern.label(pj)}, e,
                   std::nullopt);
        }
      }
      for (int i : path) {
        const VertexId pi = p.code_to_pattern[static_cast<std::size_t>(i)];
        for (auto w : pattern.neighbors(pi)) {
          if (p.pattern_to_code[w] != -1) continue;
          consider(p, {i, next_id, pattern.label(pi), elabel(pi, w), pattern.label(w)},
                   EdgeRef::of(pi, w), w);
        }
      }
    }
    if (!best) throw Error("internal: DFS code search stalled");
    code.push_back(*best);
    projections = std::move(next);
  }
  return code;
}

/// True when `code` is the minimum DFS code of the pattern it describes.
inline bool is_minimal(const DfsCode& code) {
  if (code.empty()) return false;
  return min_dfs_code(graph_of(code)) == code;
}

}  // namespace subquest
