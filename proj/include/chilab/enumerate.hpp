#ifndef CHILAB_ENUMERATE_HPP
#define CHILAB_ENUMERATE_HPP

#include <cstdint>
#include <vector>

#include "chilab/graph.hpp"

namespace chilab {

// Lexicographically least upper-triangle bitstring (graph6 bit order) over
// all vertex orderings, found by backtracking with prefix pruning and twin
// skipping. Supported for n <= 11 (code must fit one word).
std::uint64_t canonical_code(const Graph& g);

// Rebuilds the graph whose upper-triangle bits equal `code`.
Graph graph_from_code(std::uint64_t code, int n);

bool is_isomorphic(const Graph& a, const Graph& b);

// With dedup: one representative per isomorphism class, ordered by canonical
// code (n <= 8). Without dedup: all labelled graphs in code order (n <= 6).
std::vector<Graph> enumerate_graphs(int n, bool dedup);

} // namespace chilab

#endif
