#ifndef CHILAB_GRAPH_HPP
#define CHILAB_GRAPH_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "chilab/errors.hpp"

namespace chilab {

// Vertex subsets are one machine word; this caps every graph at 64 vertices,
// which covers all desk-scale corpora. Operations that need more must fail
// with a CapabilityError instead of growing the representation.
using VSet = std::uint64_t;

constexpr int kMaxVertices = 64;

inline VSet bit(int v) { return VSet{1} << v; }
inline bool contains(VSet s, int v) { return (s >> v) & 1; }
inline int popcount(VSet s) { return std::popcount(s); }
inline int lowest(VSet s) { return std::countr_zero(s); } // undefined for s == 0
inline VSet all_below(int n) { return n >= 64 ? ~VSet{0} : (VSet{1} << n) - 1; }

// for (int v = first(s); v >= 0; v = next(s, v)) iterates ascending.
inline int first_vertex(VSet s) { return s ? lowest(s) : -1; }
inline int next_vertex(VSet s, int v) {
    VSet rest = s & ~((bit(v) << 1) - 1);
    return rest ? lowest(rest) : -1;
}

#define CHILAB_FOR_VSET(v, s) \
    for (int v = ::chilab::first_vertex(s); v >= 0; v = ::chilab::next_vertex((s), v))

std::vector<int> to_vector(VSet s);
VSet from_vector(const std::vector<int>& vs);

// Simple undirected graph on vertices 0..n-1, adjacency rows as bitsets.
// Immutable in spirit: operations never modify their inputs.
class Graph {
public:
    Graph() : n_(0) {}
    explicit Graph(int n);

    int n() const { return n_; }
    VSet vertices() const { return all_below(n_); }
    std::size_t edge_count() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    bool has_edge(int u, int v) const { return contains(adj_[u], v); }

    VSet neighbours(int v) const { return adj_[v]; }
    VSet closed_neighbourhood(int v) const { return adj_[v] | bit(v); }
    int degree(int v) const { return popcount(adj_[v]); }
    int max_degree() const;

    bool is_connected() const;
    // Vertices of the component of `v` within the subset `within`.
    VSet component_of(int v, VSet within) const;

    Graph complement() const;
    // Adjacency restricted to S, relabelled to 0..|S|-1 preserving vertex order.
    Graph induced(VSet s) const;
    // Original labels of the induced subgraph's vertices, ascending.
    static std::vector<int> induced_labels(VSet s);

    // Intersection of open neighbourhoods; V(G) when S is empty (empty
    // intersection convention).
    VSet common_neighbourhood(VSet s) const;

    bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

    void check_vertex(int v) const;
    void check_subset(VSet s) const;

private:
    int n_;
    std::vector<VSet> adj_;
};

Graph disjoint_union(const Graph& a, const Graph& b);

// Replaces every vertex of `base` by a copy of `part`; copies of adjacent
// base vertices are complete to each other.
Graph substitute(const Graph& base, const Graph& part);

// graph6 text for one graph (no header, no newline).
std::string write_graph6(const Graph& g);
// Accepts an optional ">>graph6<<" header. Rejects trailing bytes.
Graph parse_graph6(const std::string& text);
// One graph per line, graph6 or sparse6 (':' prefix); '#' comments and blank
// lines ignored.
std::vector<Graph> read_graph_file(const std::string& path);
Graph parse_graph_line(const std::string& line);

} // namespace chilab

#endif
