#include "chilab/extraction.hpp"

#include <algorithm>
#include <queue>

#include "chilab/detectors.hpp"

namespace chilab {

// ---- thresholds ---------------------------------------------------------------

namespace {

void check_range(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

} // namespace

std::string Threshold::describe() const {
    const char* name = "";
    switch (kind) {
        case Kind::CocktailKS: name = "cocktailks"; break;
        case Kind::Path2: name = "path2"; break;
        case Kind::BroomKS: name = "broomks"; break;
        case Kind::StableChi: name = "stablechi"; break;
        case Kind::KappaChi: name = "kappachi"; break;
    }
    return std::string(name) + "=" + rat_str(value) + (exact ? "" : " (upper-bound Ramsey entry)");
}

Threshold threshold_cocktail_ks(int m, int s, int k, int omega) {
    check_range(m >= 1, "cocktailks needs m >= 1");
    check_range(s >= 2, "cocktailks needs s >= 2");
    check_range(k >= 3, "cocktailks needs k >= 3");
    check_range(omega >= 0, "clique number must be >= 0");
    RamseyValue r = ramsey(s, omega + 1);
    Rat a = Rat(2) * rat_pow(Rat(s), k - 3);
    Rat value = rat_pow(a, m - 1) * Rat(4 * s + 1) * Rat(r.value);
    return {Threshold::Kind::CocktailKS, value, r.exact};
}

Threshold threshold_path2(int s, int k, int q, int omega) {
    check_range(s >= 2, "path2 needs s >= 2");
    check_range(k >= 5, "path2 needs k >= 5");
    check_range(q >= 1, "path2 needs q >= 1");
    check_range(omega >= 0, "clique number must be >= 0");
    RamseyValue r = ramsey(s, omega + 1);
    Rat value = rat_pow(Rat(s), k - 3) * (Rat(2 * q) + Rat(7 * s) * Rat(r.value) - Rat(7 * s));
    return {Threshold::Kind::Path2, value, r.exact};
}

Threshold threshold_broom_ks(int k, int l, int s, int q, int omega) {
    check_range(k >= 2, "broomks needs k >= 2");
    check_range(l >= 1, "broomks needs l >= 1");
    check_range(s >= 2, "broomks needs s >= 2");
    check_range(q >= 1, "broomks needs q >= 1");
    check_range(omega >= 0, "clique number must be >= 0");
    RamseyValue r = ramsey(s, omega + 1);
    Rat value = Rat(7) * rat_pow(Rat(s), k) * rat_pow(Rat(l), s + 1) * (Rat(q) + Rat(r.value));
    return {Threshold::Kind::BroomKS, value, r.exact};
}

Threshold threshold_stable_chi(int s, int q, int alpha, int omega) {
    check_range(s >= 2, "stablechi needs s >= 2");
    check_range(q >= 0, "stablechi needs q >= 0");
    check_range(alpha >= 0, "stability number must be >= 0");
    check_range(omega >= 0, "clique number must be >= 0");
    RamseyValue r = ramsey(s, omega + 1);
    Rat value = Rat(binom(static_cast<unsigned long>(alpha), static_cast<unsigned long>(s))) * Rat(q) +
                rat_pow(Rat(alpha), s - 1) * Rat(r.value);
    return {Threshold::Kind::StableChi, value, r.exact};
}

Threshold threshold_kappa_chi(long a) {
    check_range(a >= 1, "kappachi needs a >= 1");
    return {Threshold::Kind::KappaChi, Rat(4 * a - 1), true};
}

// ---- certificates ---------------------------------------------------------------

std::string certificate_kind(const Certificate& cert) {
    struct Visitor {
        std::string operator()(const RichStableSet&) const { return "rich-stable-set"; }
        std::string operator()(const InducedPathWitness&) const { return "induced-path"; }
        std::string operator()(const InducedBroomWitness&) const { return "induced-broom"; }
        std::string operator()(const TreeEmbedding&) const { return "tree-embedding"; }
        std::string operator()(const AlphaExceeds&) const { return "alpha-exceeds"; }
        std::string operator()(const HypothesisUnmet&) const { return "hypothesis-unmet"; }
    };
    return std::visit(Visitor{}, cert);
}

namespace {

bool set_is_stable(const Graph& g, VSet s) {
    CHILAB_FOR_VSET(v, s) {
        if (g.neighbours(v) & s) return false;
    }
    return true;
}

} // namespace

bool certificate_is_valid(const Graph& g, const Certificate& cert, long long chi_budget) {
    if (const auto* rs = std::get_if<RichStableSet>(&cert)) {
        if (!rs->stable || (rs->stable & ~g.vertices())) return false;
        if (!set_is_stable(g, rs->stable)) return false;
        if (g.common_neighbourhood(rs->stable) != rs->common) return false;
        int chi = chromatic_number(g.induced(rs->common), chi_budget);
        return chi == rs->chi_common && chi > rs->q;
    }
    if (const auto* pw = std::get_if<InducedPathWitness>(&cert)) {
        if (pw->k < 1 || static_cast<int>(pw->vertices.size()) != pw->k) return false;
        return embedding_is_induced(g, generate(FamilySpec::path(pw->k)), pw->vertices);
    }
    if (const auto* bw = std::get_if<InducedBroomWitness>(&cert)) {
        if (bw->k < 2 || bw->l < 1) return false;
        if (static_cast<int>(bw->vertices.size()) != bw->k + bw->l) return false;
        return embedding_is_induced(g, generate(FamilySpec::broom(bw->k, bw->l)), bw->vertices);
    }
    if (const auto* te = std::get_if<TreeEmbedding>(&cert)) {
        return embedding_is_induced(g, te->pattern, te->map);
    }
    if (const auto* ae = std::get_if<AlphaExceeds>(&cert)) {
        return popcount(ae->witness) == ae->bound + 1 && set_is_stable(g, ae->witness);
    }
    if (const auto* hu = std::get_if<HypothesisUnmet>(&cert)) {
        // Skeleton-side hypotheses are about degrees and widths, not chi;
        // those certificates record actual_chi = -1.
        return hu->actual_chi < 0 || hu->actual_chi == chromatic_number(g, chi_budget);
    }
    return false;
}

// ---- brute-force rich stable sets --------------------------------------------------

namespace {

bool lex_stable_rich(const Graph& g, int size, int from, VSet chosen, int q, long long budget,
                     RichStableSet* out) {
    if (popcount(chosen) == size) {
        VSet common = g.common_neighbourhood(chosen);
        int chi = chromatic_number(g.induced(common), budget);
        if (chi > q) {
            *out = RichStableSet{chosen, common, chi, q};
            return true;
        }
        return false;
    }
    for (int v = from; v < g.n(); ++v) {
        if (g.n() - v < size - popcount(chosen)) return false;
        if (g.neighbours(v) & chosen) continue;
        if (lex_stable_rich(g, size, v + 1, chosen | bit(v), q, budget, out)) return true;
    }
    return false;
}

} // namespace

std::optional<RichStableSet> find_rich_stable_set_bruteforce(const Graph& g, int s, int q,
                                                             long long chi_budget) {
    if (s < 1) throw ParameterError("stable-set size must be >= 1");
    if (q < 0) throw ParameterError("q must be >= 0");
    RichStableSet out{};
    if (lex_stable_rich(g, s, 0, 0, q, chi_budget, &out)) return out;
    return std::nullopt;
}

// ---- highly connected subgraphs ------------------------------------------------------

VSet hc_subgraph(const Graph& g, const Int& a, long long chi_budget) {
    if (a < 1) throw ParameterError("connectivity parameter must be >= 1");
    if (Int(g.n()) < a + 2)
        throw CapabilityError("graph order " + std::to_string(g.n()) +
                              " cannot contain an (a+1)-connected subgraph for a = " + a.get_str());
    long al = to_long(a);
    long target = chromatic_number(g, chi_budget) - 2 * al + 1;
    auto qualifies = [&](VSet sub) {
        Graph h = g.induced(sub);
        if (!is_a_connected(h, static_cast<int>(al) + 1).connected) return false;
        return static_cast<long>(chromatic_number(h, chi_budget)) >= target;
    };

    // Greedy peel: while a small cut exists, keep the side (plus the cut) with
    // the larger chromatic number.
    VSet cur = g.vertices();
    while (popcount(cur) > al + 1) {
        Graph h = g.induced(cur);
        std::vector<int> labels = Graph::induced_labels(cur);
        ConnectivityVerdict verdict = is_a_connected(h, static_cast<int>(al) + 1);
        if (verdict.connected) {
            if (static_cast<long>(chromatic_number(h, chi_budget)) >= target) return cur;
            break;
        }
        if (verdict.order_violation) break;
        auto lift = [&](VSet local) {
            VSet out = 0;
            CHILAB_FOR_VSET(v, local) out |= bit(labels[static_cast<std::size_t>(v)]);
            return out;
        };
        VSet keep_a = lift(verdict.side_a) | lift(verdict.cutset);
        VSet keep_b = lift(verdict.side_b) | lift(verdict.cutset);
        int chi_a = chromatic_number(g.induced(keep_a), chi_budget);
        int chi_b = chromatic_number(g.induced(keep_b), chi_budget);
        VSet next = chi_a > chi_b ? keep_a : (chi_b > chi_a ? keep_b : std::min(keep_a, keep_b));
        if (next == cur) break;
        cur = next;
    }

    if (g.n() <= 12) {
        // Exhaustive fallback: largest subgraphs first, masks ascending within
        // a size.
        std::vector<VSet> masks;
        masks.reserve(std::size_t{1} << g.n());
        for (VSet sub = 0; sub <= g.vertices(); ++sub)
            if (popcount(sub) >= al + 2) masks.push_back(sub);
        std::stable_sort(masks.begin(), masks.end(),
                         [](VSet x, VSet y) { return popcount(x) > popcount(y); });
        for (VSet sub : masks)
            if (qualifies(sub)) return sub;
        throw CapabilityError("exhaustive search found no (a+1)-connected induced subgraph with chi >= " +
                              std::to_string(target) + " for a = " + a.get_str());
    }
    throw CapabilityError("greedy peel found no (a+1)-connected induced subgraph with chi >= " +
                          std::to_string(target) + " for a = " + a.get_str() +
                          " and the graph is too large for the exhaustive fallback");
}

// ---- the path-growing core ---------------------------------------------------------

namespace {

int chi_of(const Graph& g, VSet sub, long long budget) {
    return chromatic_number(g.induced(sub), budget);
}

// Stable s-set inside G[sub], as a mask in G's labels (lexicographically least).
std::optional<VSet> stable_in(const Graph& g, VSet sub, int s) {
    Graph h = g.induced(sub);
    std::vector<int> labels = Graph::induced_labels(sub);
    auto local = find_stable_set(h, s);
    if (!local) return std::nullopt;
    VSet out = 0;
    CHILAB_FOR_VSET(v, *local) out |= bit(labels[static_cast<std::size_t>(v)]);
    return out;
}

// Used when a guarantee of the proof fails at run time: forced runs stop with
// a HypothesisUnmet certificate, unforced runs report the broken invariant.
struct SoftStop {
    HypothesisUnmet cert;
};

[[noreturn]] void stop(bool force, const Rat& thr, bool thr_exact, int chi_g, const std::string& note) {
    if (force) throw SoftStop{HypothesisUnmet{thr, thr_exact, chi_g, note}};
    throw InvariantViolation("proof-step guarantee failed: " + note);
}

// Multi-source shortest path inside G[allowed] from `sources` to `targets`,
// deterministic: vertices scanned in ascending order, first discoverer wins.
std::optional<std::vector<int>> bfs_path(const Graph& g, VSet allowed, VSet sources, VSet targets) {
    sources &= allowed;
    targets &= allowed;
    if (!sources || !targets) return std::nullopt;
    std::vector<int> parent(static_cast<std::size_t>(g.n()), -2);
    std::queue<int> q;
    CHILAB_FOR_VSET(v, sources) {
        parent[static_cast<std::size_t>(v)] = -1;
        q.push(v);
    }
    // Sources and targets are disjoint at every call site, but stay defensive.
    int hit = (sources & targets) ? lowest(sources & targets) : -1;
    while (!q.empty() && hit < 0) {
        int v = q.front();
        q.pop();
        if (contains(targets, v)) {
            hit = v;
            break;
        }
        CHILAB_FOR_VSET(u, g.neighbours(v) & allowed) {
            if (parent[static_cast<std::size_t>(u)] == -2) {
                parent[static_cast<std::size_t>(u)] = v;
                if (contains(targets, u)) {
                    hit = u;
                    goto done;
                }
                q.push(u);
            }
        }
    }
done:
    if (hit < 0) return std::nullopt;
    std::vector<int> path;
    for (int v = hit; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

struct PathLoopConfig {
    int s;
    int q;
    Rat threshold;
    bool threshold_exact;
    Int conn;   // connectivity and degree demand on J (R in the path case, B for brooms)
    Int z_cap;  // the Ramsey number governing the Z exit (R in both cases)
    Int a;      // side parameter fed to hc_subgraph
    int p_max;  // grow while p <= p_max
    bool force;
    long long budget;
};

struct PathLoopState {
    std::vector<int> path;
    VSet j_set;
};

Rat f_value(const Rat& f1, const Rat& r, int s, int i) {
    // f(i) + r = s^{1-i} (f(1) + r)
    return rat_pow(Rat(s), 1 - i) * (f1 + r) - r;
}

// Connectivity demand check with the huge-parameter clamp: a demand beyond the
// order can never hold and must not overflow machine integers.
bool conn_at_least(const Graph& g, VSet sub, const Int& demand) {
    if (Int(popcount(sub)) <= demand) return false;
    return is_a_connected(g.induced(sub), static_cast<int>(to_long(demand))).connected;
}

void verify_loop_invariants(const Graph& g, const PathLoopConfig& cfg, const PathLoopState& st,
                            const Rat& f1, const Rat& r, int chi_g) {
    const std::vector<int>& path = st.path;
    int p = static_cast<int>(path.size());
    auto fail = [&](const std::string& note) {
        stop(cfg.force, cfg.threshold, cfg.threshold_exact, chi_g, note);
    };
    VSet path_set = from_vector(path);
    if (path_set & st.j_set) fail("path and J are not disjoint");
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            bool edge = g.has_edge(path[static_cast<std::size_t>(i)], path[static_cast<std::size_t>(j)]);
            if (edge != (j == i + 1)) fail("path is not induced");
        }
    for (int i = 0; i + 1 < p; ++i)
        if (g.neighbours(path[static_cast<std::size_t>(i)]) & st.j_set)
            fail("an interior path vertex has a neighbour in J");
    int vp = path.back();
    if (Int(popcount(g.neighbours(vp) & st.j_set)) < cfg.conn)
        fail("path endpoint has too few neighbours in J");
    if (!conn_at_least(g, st.j_set, cfg.conn)) fail("J is not sufficiently connected");
    Rat fp = f_value(f1, r, cfg.s, p);
    if (!(Rat(chi_of(g, st.j_set & ~g.neighbours(vp), cfg.budget)) > fp))
        fail("chi(J minus the endpoint neighbourhood) is not above f(p)");
}

// Shared loop behind gyarfas_extract and broom_extract. `overflow` assembles
// the witness once p exceeds cfg.p_max.
template <typename Overflow>
Certificate run_path_loop(const Graph& g, const PathLoopConfig& cfg, PathLoopState st, int chi_g,
                          const Rat& f1, const Rat& r, ExtractionTrace* trace, Overflow overflow) {
    for (;;) {
        int p = static_cast<int>(st.path.size());
        if (p > cfg.p_max) return overflow(st);
        if (trace) trace->steps.push_back({st.path, st.j_set, 0, 0, Rat(0)});
        verify_loop_invariants(g, cfg, st, f1, r, chi_g);
        int vp = st.path.back();
        VSet j_minus = st.j_set & ~g.neighbours(vp);
        VSet l_set = hc_subgraph(g.induced(j_minus), cfg.a, cfg.budget);
        {
            // hc_subgraph worked in induced labels; lift back to G.
            std::vector<int> labels = Graph::induced_labels(j_minus);
            VSet lifted = 0;
            CHILAB_FOR_VSET(v, l_set) lifted |= bit(labels[static_cast<std::size_t>(v)]);
            l_set = lifted;
        }
        Rat b = f_value(f1, r, cfg.s, p + 1) + Rat(cfg.conn) - 1;
        VSet z_set = 0;
        CHILAB_FOR_VSET(z, st.j_set) {
            if (!(Rat(chi_of(g, l_set & ~g.neighbours(z), cfg.budget)) > b)) z_set |= bit(z);
        }
        if (trace) {
            trace->steps.back().l_set = l_set;
            trace->steps.back().z_set = z_set;
            trace->steps.back().b = b;
        }

        if (Int(popcount(z_set)) >= cfg.z_cap) {
            // The Z exit: a stable s-set in Z has a common neighbourhood that
            // keeps most of L's chromatic number.
            auto stable = stable_in(g, z_set, cfg.s);
            if (!stable)
                throw InvariantViolation("Ramsey guarantee failed: no stable set of size " +
                                         std::to_string(cfg.s) + " in a Z of size " +
                                         std::to_string(popcount(z_set)));
            VSet common = g.common_neighbourhood(*stable);
            int chi_common = chi_of(g, common, cfg.budget);
            if (chi_common <= cfg.q)
                stop(cfg.force, cfg.threshold, cfg.threshold_exact, chi_g,
                     "Z exit produced a common neighbourhood with chi <= q");
            return RichStableSet{*stable, common, chi_common, cfg.q};
        }

        // Extend the path by a shortest Z-avoiding route from N(v_p) in J to L.
        VSet allowed = st.j_set & ~z_set;
        VSet sources = g.neighbours(vp) & st.j_set & ~z_set;
        VSet targets = l_set & ~z_set;
        auto route = bfs_path(g, allowed, sources, targets);
        if (!route)
            stop(cfg.force, cfg.threshold, cfg.threshold_exact, chi_g,
                 "no Z-avoiding path from the endpoint neighbourhood to L");
        const std::vector<int>& w = *route;
        if (w.size() < 2)
            throw InvariantViolation("route between disjoint source and target sets has one vertex");
        int w_prev = w[w.size() - 2];
        // Interior vertices of the new path must end up anticomplete to the
        // new J. Minimality keeps them clear of L \ Z, but they may still see
        // vertices of Z inside L, so those neighbourhoods are excluded too
        // (the next verify pass rechecks every demand on the shrunken J).
        Int prev_l_deg(popcount(g.neighbours(w_prev) & l_set));
        if (prev_l_deg < cfg.conn) {
            // Keep the full route; everything before its last vertex turns
            // interior.
            st.path.insert(st.path.end(), w.begin(), w.end());
            VSet drop = 0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) drop |= g.neighbours(w[i]);
            st.j_set = l_set & ~drop;
        } else {
            // The second-to-last vertex already sees much of L; stop there.
            st.path.insert(st.path.end(), w.begin(), w.end() - 1);
            VSet drop = 0;
            for (std::size_t i = 0; i + 2 < w.size(); ++i) drop |= g.neighbours(w[i]);
            st.j_set = l_set & ~drop;
        }
    }
}

struct StageTwoResult {
    VSet f_set;
    VSet stable;
    std::optional<Certificate> rich; // set when the first stable set already works
};

// Common stage: highly connected F, a stable s-set S inside it, and the
// first rich-common-neighbourhood attempt.
StageTwoResult stage_two(const Graph& g, const PathLoopConfig& cfg, int chi_g) {
    VSet f_set = hc_subgraph(g, cfg.a, cfg.budget);
    auto stable = stable_in(g, f_set, cfg.s);
    if (!stable) {
        if (Int(popcount(f_set)) >= cfg.z_cap)
            throw InvariantViolation("Ramsey guarantee failed inside the highly connected subgraph");
        stop(cfg.force, cfg.threshold, cfg.threshold_exact, chi_g,
             "highly connected subgraph too small to force a stable set");
    }
    VSet common_f = g.common_neighbourhood(*stable) & f_set;
    if (chi_of(g, common_f, cfg.budget) > cfg.q) {
        VSet common = g.common_neighbourhood(*stable);
        int chi_common = chi_of(g, common, cfg.budget);
        if (chi_common <= cfg.q)
            throw InvariantViolation("common neighbourhood lost chromatic number outside F");
        return {f_set, *stable, Certificate{RichStableSet{*stable, common, chi_common, cfg.q}}};
    }
    return {f_set, *stable, std::nullopt};
}

// Picks v in S maximising chi(F \ N(v)) (least index on ties) and forms the
// initial (path, J) pair.
PathLoopState initial_state(const Graph& g, const PathLoopConfig& cfg, VSet f_set, VSet stable) {
    int best_v = -1;
    int best_chi = -1;
    CHILAB_FOR_VSET(v, stable) {
        int chi = chi_of(g, f_set & ~g.neighbours(v), cfg.budget);
        if (chi > best_chi) {
            best_chi = chi;
            best_v = v;
        }
    }
    return PathLoopState{{best_v}, f_set & ~bit(best_v)};
}

} // namespace

// ---- gyarfas_extract ------------------------------------------------------------

Certificate gyarfas_extract(const Graph& g, int s, int q, int k, bool force, long long chi_budget,
                            ExtractionTrace* trace) {
    if (s < 2) throw ParameterError("gyarfas_extract needs s >= 2");
    if (q < 1) throw ParameterError("gyarfas_extract needs q >= 1");
    if (k < 5) throw ParameterError("gyarfas_extract needs k >= 5");
    int omega = clique_number(g);
    RamseyValue rv = ramsey(s, omega + 1);
    Threshold thr = threshold_path2(s, k, q, omega);
    int chi_g = chromatic_number(g, chi_budget);
    if (Rat(chi_g) < thr.value && !force)
        return HypothesisUnmet{thr.value, thr.exact, chi_g, ""};

    PathLoopConfig cfg{s,       q,          thr.value, thr.exact, rv.value, rv.value,
                       Int(s) * (rv.value - 1), k - 3,     force,     chi_budget};
    Rat a_rat = Rat(cfg.a);
    Rat r = (Rat(q) + 3 * a_rat) / Rat(s - 1);
    Rat f1 = (Rat(chi_g) - q - 2 * a_rat) / Rat(s);
    if (trace) {
        trace->a = a_rat;
        trace->r = r;
        for (int i = 1; i <= k; ++i) trace->fvals.push_back(f_value(f1, r, s, i));
    }

    try {
        StageTwoResult stage = stage_two(g, cfg, chi_g);
        if (stage.rich) return *stage.rich;
        PathLoopState st = initial_state(g, cfg, stage.f_set, stage.stable);

        auto overflow = [&](const PathLoopState& end) -> Certificate {
            // p >= k-2: the path plus its continuation into J yields an
            // induced k-vertex path.
            std::vector<int> vertices = end.path;
            int p = static_cast<int>(vertices.size());
            if (p == k - 2 || p == k - 1) {
                int vp = vertices.back();
                VSet sources = g.neighbours(vp) & end.j_set;
                if (!sources)
                    stop(force, thr.value, thr.exact, chi_g, "endpoint has no neighbour left in J");
                if (p == k - 1) {
                    vertices.push_back(lowest(sources));
                } else {
                    auto route = bfs_path(g, end.j_set, sources, end.j_set & ~g.neighbours(vp));
                    if (!route || route->size() < 2)
                        stop(force, thr.value, thr.exact, chi_g,
                             "no two-step continuation of the path inside J");
                    vertices.push_back((*route)[0]);
                    vertices.push_back((*route)[1]);
                }
            }
            vertices.resize(static_cast<std::size_t>(k));
            InducedPathWitness witness{vertices, k};
            if (!certificate_is_valid(g, Certificate{witness}, chi_budget))
                stop(force, thr.value, thr.exact, chi_g, "assembled path witness failed revalidation");
            return witness;
        };

        Certificate cert = run_path_loop(g, cfg, std::move(st), chi_g, f1, r, trace, overflow);
        if (!certificate_is_valid(g, cert, chi_budget))
            throw InvariantViolation("gyarfas_extract certificate failed revalidation");
        return cert;
    } catch (const SoftStop& soft) {
        return soft.cert;
    }
}

// ---- broom_extract ----------------------------------------------------------------

Certificate broom_extract(const Graph& g, int k, int l, int s, int q, bool force,
                          long long chi_budget, ExtractionTrace* trace) {
    if (k < 2) throw ParameterError("broom_extract needs k >= 2");
    if (l < 1) throw ParameterError("broom_extract needs l >= 1");
    if (s < 2) throw ParameterError("broom_extract needs s >= 2");
    if (q < 1) throw ParameterError("broom_extract needs q >= 1");
    int omega = clique_number(g);
    RamseyValue rv = ramsey(s, omega + 1);
    Threshold thr = threshold_broom_ks(k, l, s, q, omega);
    int chi_g = chromatic_number(g, chi_budget);
    if (Rat(chi_g) < thr.value && !force)
        return HypothesisUnmet{thr.value, thr.exact, chi_g, ""};

    // B = l C(l,s) q + l^s R governs connectivity and degree demands.
    Int big_b = Int(l) * binom(static_cast<unsigned long>(l), static_cast<unsigned long>(s)) * q +
                int_pow(Int(l), static_cast<unsigned long>(s)) * rv.value;
    PathLoopConfig cfg{s,       q,          thr.value, thr.exact, big_b, rv.value,
                       Int(s) * (big_b - 1), k - 1,     force,     chi_budget};
    Rat a_rat = Rat(cfg.a);
    Rat r = (Rat(q) + 3 * a_rat) / Rat(s - 1);
    Rat f1 = (Rat(chi_g) - q - 2 * a_rat) / Rat(s);
    if (trace) {
        trace->a = a_rat;
        trace->r = r;
        for (int i = 1; i <= k; ++i) trace->fvals.push_back(f_value(f1, r, s, i));
    }

    try {
        StageTwoResult stage = stage_two(g, cfg, chi_g);
        if (stage.rich) return *stage.rich;
        PathLoopState st = initial_state(g, cfg, stage.f_set, stage.stable);

        auto overflow = [&](const PathLoopState& end) -> Certificate {
            // p >= k: a stable l-set among the endpoint's neighbours in J
            // closes a (k,l)-broom whose handle is the path's tail.
            int vp = end.path.back();
            VSet hood = g.neighbours(vp) & end.j_set;
            VSet leaves = 0;
            Graph sub = g.induced(hood);
            std::vector<int> labels = Graph::induced_labels(hood);
            Certificate inner = stablechi_extract(sub, s, q, l, chi_budget);
            if (const auto* rich = std::get_if<RichStableSet>(&inner)) {
                // The conclusion already holds inside the neighbourhood; lift it.
                VSet stable = 0;
                CHILAB_FOR_VSET(v, rich->stable) stable |= bit(labels[static_cast<std::size_t>(v)]);
                VSet common = g.common_neighbourhood(stable);
                int chi_common = chi_of(g, common, chi_budget);
                if (chi_common <= q)
                    throw InvariantViolation("lifted rich stable set lost chromatic number");
                return RichStableSet{stable, common, chi_common, q};
            }
            if (const auto* ae = std::get_if<AlphaExceeds>(&inner)) {
                VSet big = ae->witness;
                CHILAB_FOR_VSET(v, big) {
                    if (popcount(leaves) == l) break;
                    leaves |= bit(labels[static_cast<std::size_t>(v)]);
                }
            } else {
                // Forced runs can land here with the neighbourhood below the
                // order bound; look for the stable l-set directly.
                auto direct = stable_in(g, hood, l);
                if (!direct)
                    stop(force, thr.value, thr.exact, chi_g,
                         "no stable set of size l among the endpoint's neighbours in J");
                leaves = *direct;
            }
            std::vector<int> vertices(end.path.end() - k, end.path.end());
            CHILAB_FOR_VSET(v, leaves) vertices.push_back(v);
            InducedBroomWitness witness{vertices, k, l};
            if (!certificate_is_valid(g, Certificate{witness}, chi_budget))
                stop(force, thr.value, thr.exact, chi_g, "assembled broom witness failed revalidation");
            return witness;
        };

        Certificate cert = run_path_loop(g, cfg, std::move(st), chi_g, f1, r, trace, overflow);
        if (!certificate_is_valid(g, cert, chi_budget))
            throw InvariantViolation("broom_extract certificate failed revalidation");
        return cert;
    } catch (const SoftStop& soft) {
        return soft.cert;
    }
}

// ---- stablechi_extract ---------------------------------------------------------------

Certificate stablechi_extract(const Graph& g, int s, int q, std::optional<int> a_opt,
                              long long chi_budget) {
    if (s < 2) throw ParameterError("stablechi_extract needs s >= 2");
    if (q < 1) throw ParameterError("stablechi_extract needs q >= 1");
    int omega = clique_number(g);
    int alpha = stability_number(g);
    RamseyValue rv = ramsey(s, omega + 1);

    if (a_opt) {
        int a = *a_opt;
        if (a < 1) throw ParameterError("a_opt must be >= 1");
        Int order_bound = Int(a) * binom(static_cast<unsigned long>(a), static_cast<unsigned long>(s)) * q +
                          int_pow(Int(a), static_cast<unsigned long>(s)) * rv.value;
        if (Int(g.n()) >= order_bound && alpha > a) {
            auto witness = find_stable_set(g, a + 1);
            if (!witness) throw InvariantViolation("stability number disagrees with stable-set search");
            return AlphaExceeds{a, *witness};
        }
    }

    // Walk the s-subsets of a maximum stable set in lexicographic order.
    VSet max_stable = max_stable_set_lex(g);
    std::vector<int> base = to_vector(max_stable);
    int m = static_cast<int>(base.size());
    std::optional<RichStableSet> found;
    if (m >= s) {
        std::vector<int> idx(static_cast<std::size_t>(s));
        auto rec = [&](auto&& self, int depth, int from) -> bool {
            if (depth == s) {
                VSet set = 0;
                for (int i : idx) set |= bit(base[static_cast<std::size_t>(i)]);
                VSet common = g.common_neighbourhood(set);
                int chi = chromatic_number(g.induced(common), chi_budget);
                if (chi > q) {
                    found = RichStableSet{set, common, chi, q};
                    return true;
                }
                return false;
            }
            for (int i = from; i <= m - (s - depth); ++i) {
                idx[static_cast<std::size_t>(depth)] = i;
                if (self(self, depth + 1, i + 1)) return true;
            }
            return false;
        };
        rec(rec, 0, 0);
    }
    if (found) return *found;

    Threshold thr = threshold_stable_chi(s, q, alpha, omega);
    int chi_g = chromatic_number(g, chi_budget);
    if (Rat(chi_g) < thr.value) return HypothesisUnmet{thr.value, thr.exact, chi_g, ""};
    if (alpha < s)
        // Only the degenerate alpha = 0 corner reaches here: with alpha >= 1
        // the threshold is at least R, and chi >= R forces a stable s-set.
        return HypothesisUnmet{thr.value, thr.exact, chi_g,
                               "no stable set of size s exists (alpha < s)"};
    throw InvariantViolation(
        "stablechi guarantee failed: chi(G) meets the threshold but no s-subset of the chosen "
        "maximum stable set has a rich common neighbourhood");
}

} // namespace chilab
