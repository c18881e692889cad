// Prints the k largest cliques of an edge-list graph.
//
//   top_cliques <graph.txt> [k]

#include <cstdlib>
#include <iostream>

#include "subquest/subquest.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <graph.txt> [k]\n";
    return 1;
  }
  const std::size_t k = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
  try {
    auto g = subquest::load_edge_list(argv[1]);
    subquest::CliqueComputation cliques;
    subquest::VirtualPriorityQueue<subquest::CliqueSubgraph> queue;
    auto run = subquest::run_basic(g, cliques, k, queue);
    for (const auto& entry : run.results.entries()) {
      std::cout << entry.item.vertices.size() << ':';
      for (auto v : entry.item.vertices) std::cout << ' ' << g.original_id(v);
      std::cout << '\n';
    }
    std::cerr << "candidates: " << run.stats.candidate_subgraphs << '\n';
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
