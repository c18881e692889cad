#pragma once

#include <bit>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subquest/subquest.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(SUBQUEST_DATA_DIR) + "/" + name; }

inline subquest::Graph triangle_tail() { return subquest::load_edge_list(data_path("triangle_tail.txt")); }
inline subquest::Graph labeled5() { return subquest::load_lg(data_path("labeled5.lg")); }
inline subquest::Graph query_abb() { return subquest::load_lg(data_path("query_abb.lg")); }
inline subquest::Graph path4() { return subquest::load_lg(data_path("path4.lg")); }
inline subquest::Graph edge_aa() { return subquest::load_lg(data_path("edge_aa.lg")); }

inline subquest::Graph gnp(std::size_t n, double p, std::mt19937_64& rng, int labels = 0) {
  std::bernoulli_distribution coin(p);
  std::vector<subquest::LabeledEdge> edges;
  for (subquest::VertexId u = 0; u < n; ++u) {
    for (subquest::VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v, 0});
    }
  }
  std::vector<subquest::Label> vl;
  if (labels > 0) {
    std::uniform_int_distribution<int> pick(0, labels - 1);
    for (std::size_t v = 0; v < n; ++v) vl.push_back(pick(rng));
  }
  return subquest::Graph::build(n, edges, std::move(vl), labels > 0);
}

/// Random connected labeled graph on `n` vertices: a random tree plus extra
/// edges with probability `p`.
inline subquest::Graph connected_graph(std::size_t n, double p, int labels, std::mt19937_64& rng) {
  std::vector<subquest::LabeledEdge> edges;
  for (subquest::VertexId v = 1; v < n; ++v) {
    std::uniform_int_distribution<subquest::VertexId> parent(0, v - 1);
    edges.push_back({parent(rng), v, 0});
  }
  std::bernoulli_distribution coin(p);
  for (subquest::VertexId u = 0; u < n; ++u) {
    for (subquest::VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v, 0});
    }
  }
  std::uniform_int_distribution<int> pick(0, labels - 1);
  std::vector<subquest::Label> vl;
  for (std::size_t v = 0; v < n; ++v) vl.push_back(pick(rng));
  return subquest::Graph::build(n, edges, std::move(vl), true);
}

/// Every connected labeled graph with up to `max_edges` edges on up to
/// `max_edges + 1` vertices over two labels.
inline std::vector<subquest::Graph> all_small_patterns(std::size_t max_edges) {
  std::vector<subquest::Graph> out;
  for (std::size_t n = 2; n <= max_edges + 1; ++n) {
    std::vector<subquest::EdgeRef> slots;
    for (subquest::VertexId u = 0; u < n; ++u) {
      for (subquest::VertexId v = u + 1; v < n; ++v) slots.push_back({u, v});
    }
    for (std::uint32_t mask = 1; mask < (1u << slots.size()); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > max_edges) continue;
      std::vector<subquest::LabeledEdge> edges;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (mask & (1u << i)) edges.push_back({slots[i].u, slots[i].v, 0});
      }
      for (int lmask = 0; lmask < (1 << n); ++lmask) {
        std::vector<subquest::Label> vl;
        for (std::size_t v = 0; v < n; ++v) vl.push_back((lmask >> v) & 1);
        auto g = subquest::Graph::build(n, edges, std::move(vl), true);
        std::vector<char> seen(n, 0);
        std::vector<subquest::VertexId> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          for (auto w : g.neighbors(v)) {
            if (!seen[w]) {
              seen[w] = 1;
              ++reached;
              stack.push_back(w);
            }
          }
        }
        if (reached == n) out.push_back(std::move(g));
      }
    }
  }
  return out;
}

}  // namespace fixtures
