#include "chilab/enumerate.hpp"

#include <algorithm>
#include <set>

namespace chilab {

namespace {

constexpr int kMaxCanonical = 11; // C(11,2) = 55 bits

struct CanonSearch {
    const Graph& g;
    int n;
    int total_bits;
    std::uint64_t best;
    bool have_best = false;
    std::vector<int> perm;

    explicit CanonSearch(const Graph& graph)
        : g(graph), n(graph.n()), total_bits(graph.n() * (graph.n() - 1) / 2), best(0) {}

    // Appends column `pos` of the triangle (adjacency of the new vertex to the
    // placed ones) and recurses. `prefix` holds `bits` code bits so far.
    void place(int pos, VSet used, std::uint64_t prefix, int bits) {
        if (pos == n) {
            if (!have_best || prefix < best) {
                best = prefix;
                have_best = true;
            }
            return;
        }
        // Candidates ordered so that fewer back-edges (smaller code bits) come
        // first; ties by vertex index for determinism.
        std::vector<std::pair<int, int>> cands;
        for (int v = 0; v < n; ++v) {
            if (contains(used, v)) continue;
            int back = popcount(g.neighbours(v) & used);
            cands.emplace_back(back, v);
        }
        std::sort(cands.begin(), cands.end());
        VSet tried = 0;
        for (auto [back, v] : cands) {
            // Skip twins of an already-tried candidate: swapping them is an
            // automorphism, so the subtree would repeat.
            bool twin = false;
            CHILAB_FOR_VSET(u, tried) {
                if (((g.neighbours(u) ^ g.neighbours(v)) & ~(bit(u) | bit(v))) == 0 &&
                    contains(g.neighbours(u), v) == contains(g.neighbours(v), u)) {
                    twin = true;
                    break;
                }
            }
            if (twin) continue;
            tried |= bit(v);
            std::uint64_t np = prefix;
            int nb = bits;
            bool pruned = false;
            for (int i = 0; i < pos; ++i) {
                int b = g.has_edge(perm[static_cast<std::size_t>(i)], v) ? 1 : 0;
                np = (np << 1) | static_cast<std::uint64_t>(b);
                ++nb;
                if (have_best) {
                    std::uint64_t best_prefix = best >> (total_bits - nb);
                    if (np > best_prefix) {
                        pruned = true;
                        break;
                    }
                }
            }
            if (pruned) continue;
            perm[static_cast<std::size_t>(pos)] = v;
            place(pos + 1, used | bit(v), np, nb);
        }
    }
};

} // namespace

std::uint64_t canonical_code(const Graph& g) {
    if (g.n() > kMaxCanonical)
        throw CapabilityError("canonical form supported for n <= " + std::to_string(kMaxCanonical));
    if (g.n() <= 1) return 0;
    CanonSearch search(g);
    search.perm.assign(static_cast<std::size_t>(g.n()), -1);
    search.place(0, 0, 0, 0);
    return search.best;
}

Graph graph_from_code(std::uint64_t code, int n) {
    Graph g(n);
    int total = n * (n - 1) / 2;
    int at = total;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            --at;
            if ((code >> at) & 1) g.add_edge(i, j);
        }
    return g;
}

bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    return canonical_code(a) == canonical_code(b);
}

std::vector<Graph> enumerate_graphs(int n, bool dedup) {
    if (n < 0) throw ParameterError("vertex count must be >= 0");
    if (!dedup) {
        if (n > 6) throw CapabilityError("raw enumeration supported for n <= 6");
        int total = n * (n - 1) / 2;
        std::vector<Graph> out;
        out.reserve(std::size_t{1} << total);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << total); ++code)
            out.push_back(graph_from_code(code, n));
        return out;
    }
    if (n > 8) throw CapabilityError("deduplicated enumeration supported for n <= 8");
    // Grow one vertex at a time: every m-vertex class arises by attaching a
    // new vertex to some (m-1)-vertex representative.
    std::vector<std::uint64_t> level{0}; // the empty graph on 0 vertices
    for (int m = 1; m <= n; ++m) {
        std::set<std::uint64_t> next;
        for (std::uint64_t parent_code : level) {
            Graph parent = graph_from_code(parent_code, m - 1);
            for (VSet nbrs = 0; nbrs < (VSet{1} << (m - 1)); ++nbrs) {
                Graph child(m);
                for (int u = 0; u < m - 1; ++u)
                    CHILAB_FOR_VSET(v, parent.neighbours(u)) if (v > u) child.add_edge(u, v);
                CHILAB_FOR_VSET(u, nbrs) child.add_edge(u, m - 1);
                next.insert(canonical_code(child));
            }
        }
        level.assign(next.begin(), next.end());
    }
    std::vector<Graph> out;
    out.reserve(level.size());
    for (std::uint64_t code : level) out.push_back(graph_from_code(code, n));
    return out;
}

} // namespace chilab
