#ifndef CHILAB_DETECTORS_HPP
#define CHILAB_DETECTORS_HPP

#include <optional>
#include <vector>

#include "chilab/family.hpp"
#include "chilab/graph.hpp"

namespace chilab {

// Patterns are ordinary graphs; named families come via generate(). Arbitrary
// patterns are capped at 12 vertices.
struct PatternSpec {
    FamilySpec family;     // used when !arbitrary
    Graph graph;           // used when arbitrary
    bool arbitrary = false;

    static PatternSpec of(FamilySpec f) { return {std::move(f), Graph(), false}; }
    static PatternSpec of(Graph g) { return {{}, std::move(g), true}; }

    Graph realise() const { return arbitrary ? graph : generate(family); }
};

// Injective map pattern-vertex -> host-vertex preserving adjacency and
// non-adjacency. Backtracking: pattern vertices in BFS order from a
// max-degree vertex, candidates in host index order, non-adjacency enforced
// during the search. Returns std::nullopt iff the host is pattern-free.
std::optional<std::vector<int>> find_induced(const Graph& host, const Graph& pattern);
std::optional<std::vector<int>> find_induced(const Graph& host, const PatternSpec& pattern);

bool is_free(const Graph& host, const std::vector<PatternSpec>& patterns);
bool is_free(const Graph& host, const std::vector<Graph>& patterns);

// Post-hoc check that `map` embeds `pattern` into `host` as an induced
// subgraph; used to revalidate every returned embedding.
bool embedding_is_induced(const Graph& host, const Graph& pattern, const std::vector<int>& map);

// No induced even cycle C_{2k}, 4 <= 2k <= n.
bool is_even_hole_free(const Graph& g);

} // namespace chilab

#endif
