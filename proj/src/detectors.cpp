#include "chilab/detectors.hpp"

#include <algorithm>

namespace chilab {

namespace {

// BFS order from a maximum-degree vertex; restarts on further components at
// the next unvisited max-degree vertex. Every vertex after the first of its
// component has an already-ordered neighbour, which keeps candidate lists
// anchored during the search.
std::vector<int> pattern_order(const Graph& p) {
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(p.n()), 0);
    while (static_cast<int>(order.size()) < p.n()) {
        int start = -1;
        for (int v = 0; v < p.n(); ++v)
            if (!seen[static_cast<std::size_t>(v)] &&
                (start < 0 || p.degree(v) > p.degree(start)))
                start = v;
        std::vector<int> queue{start};
        seen[static_cast<std::size_t>(start)] = 1;
        for (std::size_t at = 0; at < queue.size(); ++at) {
            int v = queue[at];
            order.push_back(v);
            CHILAB_FOR_VSET(u, p.neighbours(v)) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    return order;
}

struct InducedSearch {
    const Graph& host;
    const Graph& pattern;
    const std::vector<int>& order;
    std::vector<int> image; // pattern vertex -> host vertex, -1 unset
    VSet used = 0;

    bool extend(std::size_t pos) {
        if (pos == order.size()) return true;
        int pv = order[static_cast<std::size_t>(pos)];
        // Candidates must match adjacency and non-adjacency against every
        // already-placed pattern vertex, so "induced" holds structurally.
        VSet cand = host.vertices() & ~used;
        for (std::size_t i = 0; i < pos; ++i) {
            int qv = order[i];
            int hv = image[static_cast<std::size_t>(qv)];
            if (pattern.has_edge(pv, qv))
                cand &= host.neighbours(hv);
            else
                cand &= ~host.neighbours(hv);
            if (!cand) return false;
        }
        CHILAB_FOR_VSET(hv, cand) {
            image[static_cast<std::size_t>(pv)] = hv;
            used |= bit(hv);
            if (extend(pos + 1)) return true;
            used &= ~bit(hv);
            image[static_cast<std::size_t>(pv)] = -1;
        }
        return false;
    }
};

} // namespace

bool embedding_is_induced(const Graph& host, const Graph& pattern, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != pattern.n()) return false;
    VSet used = 0;
    for (int v : map) {
        if (v < 0 || v >= host.n() || contains(used, v)) return false;
        used |= bit(v);
    }
    for (int a = 0; a < pattern.n(); ++a)
        for (int b = a + 1; b < pattern.n(); ++b)
            if (pattern.has_edge(a, b) !=
                host.has_edge(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
                return false;
    return true;
}

std::optional<std::vector<int>> find_induced(const Graph& host, const Graph& pattern) {
    if (pattern.n() > host.n()) return std::nullopt;
    if (pattern.n() == 0) return std::vector<int>{};
    std::vector<int> order = pattern_order(pattern);
    InducedSearch search{host, pattern, order, {}, 0};
    search.image.assign(static_cast<std::size_t>(pattern.n()), -1);
    if (!search.extend(0)) return std::nullopt;
    if (!embedding_is_induced(host, pattern, search.image))
        throw InvariantViolation("induced-subgraph search produced a bad embedding");
    return search.image;
}

std::optional<std::vector<int>> find_induced(const Graph& host, const PatternSpec& pattern) {
    Graph p = pattern.realise();
    if (pattern.arbitrary && p.n() > 12)
        throw CapabilityError("arbitrary patterns supported up to 12 vertices");
    return find_induced(host, p);
}

bool is_free(const Graph& host, const std::vector<PatternSpec>& patterns) {
    for (const PatternSpec& p : patterns)
        if (find_induced(host, p)) return false;
    return true;
}

bool is_free(const Graph& host, const std::vector<Graph>& patterns) {
    for (const Graph& p : patterns)
        if (find_induced(host, p)) return false;
    return true;
}

bool is_even_hole_free(const Graph& g) {
    for (int len = 4; len <= g.n(); len += 2)
        if (find_induced(g, generate(FamilySpec::cycle(len)))) return false;
    return true;
}

} // namespace chilab
