#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "subquest/error.hpp"

namespace subquest {

using VertexId = std::uint32_t;
using Label = std::int32_t;

/// Undirected edge with endpoints normalized so that u < v.
struct EdgeRef {
  VertexId u = 0;
  VertexId v = 0;

  static constexpr EdgeRef of(VertexId a, VertexId b) noexcept {
    return a < b ? EdgeRef{a, b} : EdgeRef{b, a};
  }

  constexpr VertexId other(VertexId x) const noexcept { return x == u ? v : u; }

  friend constexpr auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// Input edge before normalization, with an optional label.
struct LabeledEdge {
  VertexId u = 0;
  VertexId v = 0;
  Label label = 0;
};

/// Immutable undirected graph in CSR form. Vertex ids are dense and 0-based;
/// `original_id` maps back to the ids used in the input file.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from (possibly duplicated, unordered) edges. Self-loops
  /// throw. On duplicates the first label wins. `vertex_labels` is either
  /// empty or has exactly `n` entries; `original_ids` likewise.
  static Graph build(std::size_t n, std::span<const LabeledEdge> edges,
                     std::vector<Label> vertex_labels = {},
                     bool with_edge_labels = false,
                     std::vector<std::int64_t> original_ids = {}) {
    if (!vertex_labels.empty() && vertex_labels.size() != n) {
      throw Error("vertex label count does not match vertex count");
    }
    if (!original_ids.empty() && original_ids.size() != n) {
      throw Error("original id count does not match vertex count");
    }
    std::vector<std::tuple<VertexId, VertexId, Label>> half;
    half.reserve(edges.size() * 2);
    for (const auto& e : edges) {
      if (e.u == e.v) throw Error("self-loop on vertex " + std::to_string(e.u));
      if (e.u >= n || e.v >= n) throw Error("edge endpoint out of range");
      half.emplace_back(e.u, e.v, e.label);
      half.emplace_back(e.v, e.u, e.label);
    }
    // Stable so the first occurrence of a duplicate keeps its label.
    std::stable_sort(half.begin(), half.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b));
    });
    half.erase(std::unique(half.begin(), half.end(),
                           [](const auto& a, const auto& b) {
                             return std::get<0>(a) == std::get<0>(b) &&
                                    std::get<1>(a) == std::get<1>(b);
                           }),
               half.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& [a, b, l] : half) ++g.offsets_[a + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.neighbors_.reserve(half.size());
    if (with_edge_labels) g.edge_labels_.reserve(half.size());
    for (const auto& [a, b, l] : half) {
      g.neighbors_.push_back(b);
      if (with_edge_labels) g.edge_labels_.push_back(l);
    }
    g.has_edge_labels_ = with_edge_labels;
    g.vertex_labels_ = std::move(vertex_labels);
    g.original_ids_ = std::move(original_ids);
    return g;
  }

  std::size_t vertex_count() const noexcept {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    check_vertex(v);
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(VertexId v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
  }

  bool has_edge(VertexId u, VertexId v) const {
    if (u >= vertex_count() || v >= vertex_count()) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool has_vertex_labels() const noexcept { return !vertex_labels_.empty(); }
  bool has_edge_labels() const noexcept { return has_edge_labels_; }

  /// Vertex label; unlabeled graphs report the synthetic label 0.
  Label label(VertexId v) const {
    check_vertex(v);
    return vertex_labels_.empty() ? 0 : vertex_labels_[v];
  }

  /// Label of edge (u,v); 0 when edge labels are absent.
  std::optional<Label> edge_label(VertexId u, VertexId v) const {
    if (u >= vertex_count() || v >= vertex_count()) return std::nullopt;
    auto slot = edge_label_slot(u, v);
    if (!slot) return std::nullopt;
    return has_edge_labels_ ? *slot : 0;
  }

  std::int64_t original_id(VertexId v) const {
    check_vertex(v);
    return original_ids_.empty() ? static_cast<std::int64_t>(v) : original_ids_[v];
  }

  /// All edges, normalized and ascending.
  std::vector<EdgeRef> edges() const {
    std::vector<EdgeRef> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u) {
      for (VertexId v : neighbors(u)) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(VertexId v) const {
    if (v >= vertex_count()) {
      throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
    }
  }

  const Label* edge_label_slot(VertexId u, VertexId v) const {
    auto begin = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
    auto end = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
    auto it = std::lower_bound(begin, end, v);
    if (it == end || *it != v) return nullptr;
    static constexpr Label kZero = 0;
    if (!has_edge_labels_) return &kZero;
    return &edge_labels_[static_cast<std::size_t>(it - neighbors_.begin())];
  }

  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<Label> edge_labels_;
  std::vector<Label> vertex_labels_;
  std::vector<std::int64_t> original_ids_;
  bool has_edge_labels_ = false;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::int64_t parse_int(std::string_view tok, std::size_t line) {
  std::int64_t value = 0;
  std::size_t pos = 0;
  bool neg = false;
  if (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
    neg = tok[0] == '-';
    pos = 1;
  }
  if (pos == tok.size()) throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  for (; pos < tok.size(); ++pos) {
    char c = tok[pos];
    if (c < '0' || c > '9') {
      throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return neg ? -value : value;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

/// Whitespace-separated edge pairs; `#`/`%` lines are comments. External ids
/// are remapped to 0..n-1 in ascending order of the original id.
inline Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0][0] == '#' || toks[0][0] == '%') continue;
    if (toks.size() != 2) throw ParseError(lineno, "expected two vertex ids");
    auto a = detail::parse_int(toks[0], lineno);
    auto b = detail::parse_int(toks[1], lineno);
    if (a == b) throw ParseError(lineno, "self-loop on vertex " + std::to_string(a));
    raw.emplace_back(a, b);
  }
  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::int64_t x) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  std::vector<LabeledEdge> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.push_back({dense(a), dense(b), 0});
  auto n = ids.size();
  return Graph::build(n, edges, {}, false, std::move(ids));
}

inline Graph load_edge_list(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_edge_list(in);
}

/// LG format: optional `t # <gid>`, then `v <id> <label>` with ids 0..n-1 in
/// order, and `e <u> <v> [<label>]`.
inline Graph parse_lg(std::istream& in) {
  std::vector<Label> labels;
  std::vector<LabeledEdge> edges;
  std::vector<std::size_t> edge_lines;
  bool any_edge_label = false;
  bool seen_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "t") {
      if (seen_header || !labels.empty() || !edges.empty()) {
        throw ParseError(lineno, "only one graph per LG file is supported");
      }
      seen_header = true;
    } else if (toks[0] == "v") {
      if (toks.size() < 3) throw ParseError(lineno, "vertex line is missing its label");
      if (toks.size() > 3) throw ParseError(lineno, "trailing tokens on vertex line");
      auto id = detail::parse_int(toks[1], lineno);
      if (id != static_cast<std::int64_t>(labels.size())) {
        throw ParseError(lineno, "non-consecutive vertex id " + std::to_string(id) +
                                     " (expected " + std::to_string(labels.size()) + ")");
      }
      auto label = detail::parse_int(toks[2], lineno);
      if (label < 0) throw ParseError(lineno, "labels must be non-negative");
      labels.push_back(static_cast<Label>(label));
    } else if (toks[0] == "e") {
      if (toks.size() != 3 && toks.size() != 4) throw ParseError(lineno, "malformed edge line");
      auto u = detail::parse_int(toks[1], lineno);
      auto v = detail::parse_int(toks[2], lineno);
      if (u < 0 || v < 0) throw ParseError(lineno, "negative vertex id");
      if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
      Label el = 0;
      if (toks.size() == 4) {
        auto parsed = detail::parse_int(toks[3], lineno);
        if (parsed < 0) throw ParseError(lineno, "labels must be non-negative");
        el = static_cast<Label>(parsed);
        any_edge_label = true;
      }
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), el});
      edge_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown record type '" + std::string(toks[0]) + "'");
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u >= labels.size() || edges[i].v >= labels.size()) {
      throw ParseError(edge_lines[i], "dangling edge endpoint");
    }
  }
  auto n = labels.size();
  return Graph::build(n, edges, std::move(labels), any_edge_label);
}

inline Graph load_lg(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_lg(in);
}

/// Writes `g` in LG format. Edge labels are written only when present.
inline void write_lg(std::ostream& out, const Graph& g, std::int64_t graph_id = 0) {
  out << "t # " << graph_id << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "v " << v << ' ' << g.label(v) << '\n';
  }
  for (auto e : g.edges()) {
    out << "e " << e.u << ' ' << e.v;
    if (g.has_edge_labels()) out << ' ' << *g.edge_label(e.u, e.v);
    out << '\n';
  }
}

inline std::size_t degree(const Graph& g, VertexId v) { return g.degree(v); }

}  // namespace subquest
