#include "chilab/invariants.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

#include "chilab/rng.hpp"

namespace chilab {

// ---- clique search ----------------------------------------------------------

namespace {

struct CliqueSearch {
    const Graph& g;
    VSet best = 0;
    int best_size = 0;
    int target; // stop as soon as a clique of this size is found; <= 0: maximise

    bool done() const { return target > 0 && best_size >= target; }

    // Greedy colouring bound: candidates are assigned colour classes; a clique
    // can take at most one vertex per class.
    int colour_bound(VSet cand) const {
        int colours = 0;
        while (cand) {
            ++colours;
            VSet cls = 0;
            VSet rest = cand;
            while (rest) {
                int v = lowest(rest);
                cls |= bit(v);
                rest &= ~(g.neighbours(v) | bit(v));
            }
            cand &= ~cls;
        }
        return colours;
    }

    void expand(VSet current, int size, VSet cand) {
        if (done()) return;
        if (size + popcount(cand) <= best_size) return;
        if (size + colour_bound(cand) <= best_size) return;
        while (cand) {
            if (done()) return;
            if (size + popcount(cand) <= best_size) return;
            int v = lowest(cand);
            cand &= ~bit(v);
            VSet next = current | bit(v);
            if (size + 1 > best_size) {
                best = next;
                best_size = size + 1;
            }
            expand(next, size + 1, cand & g.neighbours(v));
        }
    }
};

} // namespace

VSet max_clique(const Graph& g) {
    if (g.n() == 0) return 0;
    CliqueSearch search{g, 0, 0, 0};
    search.expand(0, 0, g.vertices());
    return search.best;
}

int clique_number(const Graph& g) { return popcount(max_clique(g)); }

int stability_number(const Graph& g) { return clique_number(g.complement()); }

namespace {

// Lexicographically least vertex list: depth-first over ascending vertices,
// which visits candidate lists in lexicographic order.
bool lex_clique_search(const Graph& g, int size, int from, VSet chosen, VSet* out) {
    if (popcount(chosen) == size) {
        *out = chosen;
        return true;
    }
    for (int v = from; v < g.n(); ++v) {
        if (g.n() - v < size - popcount(chosen)) return false;
        if ((chosen & ~g.neighbours(v)) != 0) continue;
        if (lex_clique_search(g, size, v + 1, chosen | bit(v), out)) return true;
    }
    return false;
}

} // namespace

std::optional<VSet> find_clique(const Graph& g, int size) {
    if (size < 0) throw ParameterError("clique size must be >= 0");
    if (size == 0) return VSet{0};
    if (size > g.n()) return std::nullopt;
    // Cheap existence cutoff first so the lexicographic scan cannot thrash on
    // hopeless instances.
    CliqueSearch probe{g, 0, 0, size};
    probe.expand(0, 0, g.vertices());
    if (probe.best_size < size) return std::nullopt;
    VSet out = 0;
    if (lex_clique_search(g, size, 0, 0, &out)) return out;
    return std::nullopt;
}

std::optional<VSet> find_stable_set(const Graph& g, int size) {
    return find_clique(g.complement(), size);
}

VSet max_stable_set_lex(const Graph& g) {
    int alpha = stability_number(g);
    auto s = find_stable_set(g, alpha);
    return s ? *s : 0;
}

// ---- colouring ---------------------------------------------------------------

int degeneracy(const Graph& g) {
    int best = 0;
    VSet alive = g.vertices();
    while (alive) {
        int min_v = -1, min_d = kMaxVertices + 1;
        CHILAB_FOR_VSET(v, alive) {
            int d = popcount(g.neighbours(v) & alive);
            if (d < min_d) {
                min_d = d;
                min_v = v;
            }
        }
        best = std::max(best, min_d);
        alive &= ~bit(min_v);
    }
    return best;
}

namespace {

int greedy_dsatur(const Graph& g) {
    int n = g.n();
    if (n == 0) return 0;
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::vector<VSet> nbr_colours(static_cast<std::size_t>(n), 0);
    int used = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (colour[static_cast<std::size_t>(v)] >= 0) continue;
            int sat = popcount(nbr_colours[static_cast<std::size_t>(v)]);
            int deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        int c = lowest(~nbr_colours[static_cast<std::size_t>(pick)]);
        colour[static_cast<std::size_t>(pick)] = c;
        used = std::max(used, c + 1);
        CHILAB_FOR_VSET(u, g.neighbours(pick)) nbr_colours[static_cast<std::size_t>(u)] |= bit(c);
    }
    return used;
}

struct ColourSearch {
    const Graph& g;
    int k;
    long long budget;
    std::vector<int> colour;
    std::vector<VSet> nbr_colours;
    int coloured = 0;
    int used = 0;

    bool assign(int v, int c) {
        colour[static_cast<std::size_t>(v)] = c;
        ++coloured;
        return true;
    }

    bool solve() {
        if (--budget < 0) throw CapabilityError("chromatic search exceeded its node budget");
        if (coloured == g.n()) return true;
        // Most-saturated vertex first; ties by degree then index.
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < g.n(); ++v) {
            if (colour[static_cast<std::size_t>(v)] >= 0) continue;
            int sat = popcount(nbr_colours[static_cast<std::size_t>(v)]);
            int deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        int limit = std::min(k - 1, used); // at most one brand-new colour
        for (int c = 0; c <= limit; ++c) {
            if (contains(nbr_colours[static_cast<std::size_t>(pick)], c)) continue;
            colour[static_cast<std::size_t>(pick)] = c;
            ++coloured;
            int old_used = used;
            used = std::max(used, c + 1);
            std::vector<int> touched;
            CHILAB_FOR_VSET(u, g.neighbours(pick)) {
                if (!contains(nbr_colours[static_cast<std::size_t>(u)], c)) {
                    nbr_colours[static_cast<std::size_t>(u)] |= bit(c);
                    touched.push_back(u);
                }
            }
            if (solve()) return true;
            for (int u : touched) nbr_colours[static_cast<std::size_t>(u)] &= ~bit(c);
            colour[static_cast<std::size_t>(pick)] = -1;
            --coloured;
            used = old_used;
        }
        return false;
    }
};

bool k_colourable(const Graph& g, int k, VSet seed_clique, long long& budget) {
    if (popcount(seed_clique) > k) return false;
    ColourSearch search{g, k, budget, {}, {}, 0, 0};
    search.colour.assign(static_cast<std::size_t>(g.n()), -1);
    search.nbr_colours.assign(static_cast<std::size_t>(g.n()), 0);
    int c = 0;
    CHILAB_FOR_VSET(v, seed_clique) {
        search.colour[static_cast<std::size_t>(v)] = c;
        ++search.coloured;
        search.used = c + 1;
        CHILAB_FOR_VSET(u, g.neighbours(v)) search.nbr_colours[static_cast<std::size_t>(u)] |= bit(c);
        ++c;
    }
    bool ok = search.solve();
    budget = search.budget;
    return ok;
}

} // namespace

int chromatic_number(const Graph& g, long long budget) {
    if (g.n() == 0) return 0;
    if (g.edge_count() == 0) return 1;
    VSet clique = max_clique(g);
    int lb = popcount(clique);
    int ub = greedy_dsatur(g);
    for (int k = lb; k < ub; ++k) {
        if (k_colourable(g, k, clique, budget)) return k;
    }
    return ub;
}

ExactInvariants exact_invariants(const Graph& g, long long chi_budget) {
    ExactInvariants out{};
    out.omega = clique_number(g);
    out.alpha = stability_number(g);
    out.degeneracy = degeneracy(g);
    out.chi = chromatic_number(g, chi_budget);
    return out;
}

// ---- connectivity -------------------------------------------------------------

namespace {

// Unit-capacity vertex-split flow network. Node 2v = v_in, 2v+1 = v_out.
struct FlowNet {
    struct Edge {
        int to;
        int cap;
        int rev;
    };
    std::vector<std::vector<Edge>> adj;

    explicit FlowNet(int nodes) : adj(static_cast<std::size_t>(nodes)) {}

    void add(int from, int to, int cap) {
        adj[static_cast<std::size_t>(from)].push_back({to, cap, static_cast<int>(adj[static_cast<std::size_t>(to)].size())});
        adj[static_cast<std::size_t>(to)].push_back({from, 0, static_cast<int>(adj[static_cast<std::size_t>(from)].size()) - 1});
    }

    bool bfs_augment(int s, int t) {
        std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
        std::queue<int> q;
        q.push(s);
        parent[static_cast<std::size_t>(s)] = {s, -1};
        while (!q.empty() && parent[static_cast<std::size_t>(t)].first < 0) {
            int v = q.front();
            q.pop();
            for (std::size_t i = 0; i < adj[static_cast<std::size_t>(v)].size(); ++i) {
                const Edge& e = adj[static_cast<std::size_t>(v)][i];
                if (e.cap > 0 && parent[static_cast<std::size_t>(e.to)].first < 0) {
                    parent[static_cast<std::size_t>(e.to)] = {v, static_cast<int>(i)};
                    q.push(e.to);
                }
            }
        }
        if (parent[static_cast<std::size_t>(t)].first < 0) return false;
        int v = t;
        while (v != s) {
            auto [pv, pe] = parent[static_cast<std::size_t>(v)];
            Edge& e = adj[static_cast<std::size_t>(pv)][static_cast<std::size_t>(pe)];
            e.cap -= 1;
            adj[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += 1;
            v = pv;
        }
        return true;
    }

    std::vector<char> residual_seen(int s) const {
        std::vector<char> seen(adj.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Edge& e : adj[static_cast<std::size_t>(v)])
                if (e.cap > 0 && !seen[static_cast<std::size_t>(e.to)]) {
                    seen[static_cast<std::size_t>(e.to)] = 1;
                    q.push(e.to);
                }
        }
        return seen;
    }
};

constexpr int kInf = 1 << 20;

} // namespace

int vertex_cut_between(const Graph& g, int u, int v, int cap, VSet* cut_out) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v || g.has_edge(u, v)) throw ParameterError("vertex cut needs distinct nonadjacent endpoints");
    FlowNet net(2 * g.n());
    for (int w = 0; w < g.n(); ++w) net.add(2 * w, 2 * w + 1, (w == u || w == v) ? kInf : 1);
    for (int a = 0; a < g.n(); ++a)
        CHILAB_FOR_VSET(b, g.neighbours(a)) {
            net.add(2 * a + 1, 2 * b, kInf);
        }
    int flow = 0;
    while (flow < cap && net.bfs_augment(2 * u + 1, 2 * v)) ++flow;
    if (flow >= cap) return flow;
    if (cut_out) {
        std::vector<char> seen = net.residual_seen(2 * u + 1);
        VSet cut = 0;
        for (int w = 0; w < g.n(); ++w)
            if (seen[static_cast<std::size_t>(2 * w)] && !seen[static_cast<std::size_t>(2 * w + 1)]) cut |= bit(w);
        *cut_out = cut;
    }
    return flow;
}

ConnectivityVerdict is_a_connected(const Graph& g, int a) {
    if (a < 0) throw ParameterError("connectivity parameter must be >= 0");
    ConnectivityVerdict out{};
    if (g.n() <= a) {
        out.connected = false;
        out.order_violation = true;
        return out;
    }
    if (a == 0) {
        out.connected = true;
        return out;
    }
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            if (g.has_edge(u, v)) continue;
            VSet cut = 0;
            int flow = vertex_cut_between(g, u, v, a, &cut);
            if (flow < a) {
                out.connected = false;
                out.cutset = cut;
                VSet rest = g.vertices() & ~cut;
                VSet side = g.component_of(u, rest);
                out.side_a = side;
                out.side_b = rest & ~side;
                return out;
            }
        }
    out.connected = true;
    return out;
}

// ---- Ramsey table -------------------------------------------------------------

namespace {

struct TableState {
    std::vector<RamseyEntry> entries;
    std::map<std::pair<int, int>, long> values;
};

TableState& ramsey_state() {
    static TableState state = [] {
        TableState s;
        // Classical exact values (normalised to s <= w); the same rows ship in
        // data/ramsey_small.txt for external use.
        const RamseyEntry defaults[] = {
            {3, 3, 6, "Greenwood-Gleason-1955"},
            {3, 4, 9, "Greenwood-Gleason-1955"},
            {3, 5, 14, "Greenwood-Gleason-1955"},
            {3, 6, 18, "Kery-1964"},
            {3, 7, 23, "Kalbfleisch-1966"},
            {3, 8, 28, "McKay-Min-1992"},
            {3, 9, 36, "Grinstead-Roberts-1982"},
            {4, 4, 18, "Greenwood-Gleason-1955"},
            {4, 5, 25, "McKay-Radziszowski-1995"},
        };
        for (const RamseyEntry& e : defaults) {
            s.entries.push_back(e);
            s.values[{e.s, e.w}] = e.value;
        }
        return s;
    }();
    return state;
}

std::mutex ramsey_mutex;

} // namespace

void ramsey_table_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open Ramsey table: " + path);
    TableState fresh;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream iss(line);
        RamseyEntry e;
        if (!(iss >> e.s >> e.w)) continue; // blank / comment-only line
        if (!(iss >> e.value)) throw ParameterError("Ramsey table line " + std::to_string(lineno) + " malformed");
        if (!(iss >> e.source)) e.source = "unspecified";
        if (e.s < 1 || e.w < 1 || e.value < 1)
            throw ParameterError("Ramsey table line " + std::to_string(lineno) + " out of range");
        if (e.s > e.w) std::swap(e.s, e.w);
        fresh.entries.push_back(e);
        fresh.values[{e.s, e.w}] = e.value;
    }
    std::lock_guard<std::mutex> lock(ramsey_mutex);
    ramsey_state() = std::move(fresh);
}

std::vector<RamseyEntry> ramsey_table_entries() {
    std::lock_guard<std::mutex> lock(ramsey_mutex);
    return ramsey_state().entries;
}

RamseyValue ramsey(int s, int w) {
    if (s < 1 || w < 1) throw ParameterError("Ramsey arguments must be >= 1");
    if (s == 1 || w == 1) return {Int(1), true};
    if (s == 2) return {Int(w), true};
    if (w == 2) return {Int(s), true};
    int lo = std::min(s, w), hi = std::max(s, w);
    {
        std::lock_guard<std::mutex> lock(ramsey_mutex);
        auto it = ramsey_state().values.find({lo, hi});
        if (it != ramsey_state().values.end()) return {Int(it->second), true};
    }
    return {binom(static_cast<unsigned long>(s + w - 2), static_cast<unsigned long>(s - 1)), false};
}

Rat ramsey_value(int s, int w) { return Rat(ramsey(s, w).value); }

// ---- density -------------------------------------------------------------------

long edge_pair_count(const Graph& g, VSet a, VSet b) {
    g.check_subset(a);
    g.check_subset(b);
    long count = 0;
    CHILAB_FOR_VSET(v, a) count += popcount(g.neighbours(v) & b);
    return count;
}

namespace {

// For fixed A the densest B of each size takes the vertices of largest
// |N(b) ∩ A| first, so only greedy Bs need checking.
std::optional<SparsenessVerdict> densest_violation_for(const Graph& g, VSet a, const Rat& c, int t) {
    int size_a = popcount(a);
    std::vector<std::pair<int, int>> by_count; // (-count, vertex)
    for (int v = 0; v < g.n(); ++v) by_count.emplace_back(-popcount(g.neighbours(v) & a), v);
    std::sort(by_count.begin(), by_count.end());
    long num = to_long(Int(c.get_num()));
    long den = to_long(Int(c.get_den()));
    long e = 0;
    VSet b = 0;
    for (int i = 0; i < g.n(); ++i) {
        e += -by_count[static_cast<std::size_t>(i)].first;
        b |= bit(by_count[static_cast<std::size_t>(i)].second);
        int size_b = i + 1;
        if (size_b < t) continue;
        // e > (1-c)|A||B|  <=>  e*den > (den-num)*|A||B|
        if (e * den > (den - num) * static_cast<long>(size_a) * size_b)
            return SparsenessVerdict{false, a, b, e};
    }
    return std::nullopt;
}

void check_sparse_params(const Rat& c, int t) {
    if (!(c > 0 && c < 1)) throw ParameterError("sparseness parameter c must satisfy 0 < c < 1");
    if (t < 1) throw ParameterError("sparseness parameter t must be >= 1");
}

} // namespace

SparsenessVerdict is_ct_sparse(const Graph& g, const Rat& c, int t) {
    check_sparse_params(c, t);
    if (g.n() > 20) throw CapabilityError("exhaustive sparseness test supported for n <= 20");
    for (VSet a = 0; a <= g.vertices(); ++a) {
        if (popcount(a) < t) continue;
        if (auto v = densest_violation_for(g, a, c, t)) return *v;
    }
    return SparsenessVerdict{true, 0, 0, 0};
}

SparsenessVerdict is_ct_sparse_naive(const Graph& g, const Rat& c, int t) {
    check_sparse_params(c, t);
    if (g.n() > 14) throw CapabilityError("naive sparseness oracle supported for n <= 14");
    long num = to_long(Int(c.get_num()));
    long den = to_long(Int(c.get_den()));
    for (VSet a = 0; a <= g.vertices(); ++a) {
        if (popcount(a) < t) continue;
        for (VSet b = 0; b <= g.vertices(); ++b) {
            if (popcount(b) < t) continue;
            long e = edge_pair_count(g, a, b);
            if (e * den > (den - num) * static_cast<long>(popcount(a)) * popcount(b))
                return SparsenessVerdict{false, a, b, e};
        }
    }
    return SparsenessVerdict{true, 0, 0, 0};
}

std::optional<SparsenessVerdict> sample_refute_sparse(const Graph& g, const Rat& c, int t,
                                                      int samples, std::uint64_t seed) {
    check_sparse_params(c, t);
    if (g.n() == 0 || t > g.n()) return std::nullopt;
    SplitMix64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        VSet a = 0;
        for (int v = 0; v < g.n(); ++v)
            if (rng.next() & 1) a |= bit(v);
        if (popcount(a) < t) continue;
        if (auto v = densest_violation_for(g, a, c, t)) return v;
    }
    return std::nullopt;
}

ChiDenseVerdict is_eps_chi_dense(const Graph& g, const Rat& eps, long long chi_budget) {
    if (!(eps > 0)) throw ParameterError("eps must be positive");
    Rat chi(chromatic_number(g, chi_budget));
    for (int v = 0; v < g.n(); ++v) {
        VSet rest = g.vertices() & ~g.closed_neighbourhood(v);
        Rat sub(chromatic_number(g.induced(rest), chi_budget));
        if (!(sub < eps * chi)) return {false, v};
    }
    return {true, -1};
}

} // namespace chilab
