// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include "chilab/detectors.hpp"
#include "chilab/enumerate.hpp"
#include "chilab/extraction.hpp"
#include "chilab/family.hpp"
#include "chilab/harness.hpp"
#include "chilab/invariants.hpp"
#include "chilab/skeleton.hpp"
#include "oracles.hpp"
#include "planted.hpp"

using namespace chilab;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& text) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, text.c_str());
    if (!ok) ++failures;
    std::fflush(stdout);
}

std::vector<Graph> corpus_up_to(int max_n) {
    std::vector<Graph> out;
    for (int n = 0; n <= max_n; ++n) {
        std::vector<Graph> level = enumerate_graphs(n, true);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Theorem inequality chi < (2s^{k-3})^{m-1}(4s+1) R(s,omega+1) on the
//    {P_k, mK_s-complement}-free part of the n<=8 corpus.
void criterion_1(const std::vector<Graph>& corpus, long n8_count) {
    auto start = std::chrono::steady_clock::now();
    const int combos[4][3] = {{1, 2, 5}, {2, 2, 5}, {1, 2, 6}, {2, 3, 5}};
    long failures_here = 0, checked = 0;
    std::vector<Graph> patterns_path, patterns_cocktail;
    for (auto [m, s, k] : combos) {
        patterns_path.push_back(generate(FamilySpec::path(k)));
        patterns_cocktail.push_back(generate(FamilySpec::cocktail_multi(m, s)));
    }
    for (const Graph& g : corpus) {
        ExactInvariants inv = exact_invariants(g);
        for (int i = 0; i < 4; ++i) {
            int m = combos[i][0], s = combos[i][1], k = combos[i][2];
            if (find_induced(g, patterns_path[static_cast<std::size_t>(i)])) continue;
            if (find_induced(g, patterns_cocktail[static_cast<std::size_t>(i)])) continue;
            ++checked;
            Threshold thr = threshold_cocktail_ks(m, s, k, inv.omega);
            if (!(Rat(inv.chi) < thr.value)) ++failures_here;
        }
    }
    double secs = seconds_since(start);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "cocktail chi inequality over %zu graphs (n=8 classes: %ld), 4 parameter combos, "
                  "%ld hypothesis rows, %ld failures, %.1fs",
                  corpus.size(), n8_count, checked, failures_here, secs);
    report(1, failures_here == 0 && n8_count == 12346 && secs <= 300.0, buf);
}

// 2. K22-free graphs (n<=8) and Petersen are (1/8, 2R(2,omega+1))-sparse.
void criterion_2(const std::vector<Graph>& corpus) {
    auto start = std::chrono::steady_clock::now();
    Graph c4 = generate(FamilySpec::complete_bipartite(2, 2));
    long failures_here = 0, checked = 0;
    auto check_one = [&](const Graph& g) {
        if (find_induced(g, c4)) return;
        ++checked;
        int omega = clique_number(g);
        int t = static_cast<int>(to_long(Int(2) * ramsey(2, omega + 1).value));
        if (!is_ct_sparse(g, rat(1, 8), t).sparse) ++failures_here;
    };
    for (const Graph& g : corpus) check_one(g);
    check_one(oracles::petersen());
    double secs = seconds_since(start);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "K22-free sparseness on %ld graphs (n<=8 corpus plus Petersen), "
                  "%ld failures, %.1fs",
                  checked, failures_here, secs);
    report(2, failures_here == 0 && secs <= 300.0, buf);
}

// 3. Conditional completeness of the pigeonhole extraction at (s,q) = (2,1).
void criterion_3(const std::vector<Graph>& corpus) {
    auto start = std::chrono::steady_clock::now();
    long hypothesis = 0, bad = 0;
    for (const Graph& g : corpus) {
        ExactInvariants inv = exact_invariants(g);
        if (inv.alpha < 2) continue; // the conclusion needs a stable pair to exist
        Threshold thr = threshold_stable_chi(2, 1, inv.alpha, inv.omega);
        if (Rat(inv.chi) < thr.value) continue;
        ++hypothesis;
        Certificate cert = stablechi_extract(g, 2, 1);
        if (!std::holds_alternative<RichStableSet>(cert) || !certificate_is_valid(g, cert)) ++bad;
    }
    double secs = seconds_since(start);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "pigeonhole-extraction conditional completeness: hypothesis met on %ld of %zu graphs, "
                  "%ld revalidation failures, %.1fs",
                  hypothesis, corpus.size(), bad, secs);
    report(3, bad == 0, buf);
}

// 4. Forced extraction fuzz: every returned certificate revalidates.
void criterion_4() {
    auto start = std::chrono::steady_clock::now();
    long bad = 0, capability = 0, rich = 0, witness = 0, unmet = 0;
    for (int seed = 1; seed <= 1000; ++seed) {
        Graph g = generate(FamilySpec::random(14, rat(1, 2), seed));
        try {
            Certificate cert = gyarfas_extract(g, 2, 1, 5, true);
            if (!certificate_is_valid(g, cert)) ++bad;
            if (std::holds_alternative<RichStableSet>(cert)) ++rich;
            else if (std::holds_alternative<InducedPathWitness>(cert)) ++witness;
            else ++unmet;
        } catch (const CapabilityError&) {
            ++capability;
        }
    }
    long bbad = 0, bcap = 0, bdone = 0;
    for (int seed = 1; seed <= 500; ++seed) {
        Graph g = generate(FamilySpec::random(14, rat(1, 2), 100000 + seed));
        try {
            Certificate cert = broom_extract(g, 3, 2, 2, 1, true);
            if (!certificate_is_valid(g, cert)) ++bbad;
            ++bdone;
        } catch (const CapabilityError&) {
            ++bcap;
        }
    }
    double secs = seconds_since(start);
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "extraction soundness fuzz: 1000 gyarfas runs (rich %ld, path %ld, unmet %ld, "
                  "capability %ld) and 500 broom runs (completed %ld, capability %ld); "
                  "%ld revalidation failures, %.1fs",
                  rich, witness, unmet, capability, bdone, bcap, bad + bbad, secs);
    report(4, bad + bbad == 0 && secs <= 600.0, buf);
}

// 5. Phi: recurrence == closed form, and the binomial-exponent upper bound.
void criterion_5() {
    auto start = std::chrono::steady_clock::now();
    long bad = 0;
    for (const Rat& c : {rat(1, 8), rat(1, 4), rat(2, 5)})
        for (int h = 1; h <= 8; ++h) {
            if (phi(c, h) != phi_closed_form(c, h)) ++bad;
            Rat bound = c * rat_pow(Rat(4) / c, to_long(binom(static_cast<unsigned long>(h + 1), 2)));
            if (!(phi(c, h) <= bound)) ++bad;
        }
    double secs = seconds_since(start);
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "Phi recurrence/closed-form identity and upper bound over 3 x 8 parameter grid, "
                  "%ld failures, %.3fs",
                  bad, secs);
    report(5, bad == 0 && secs < 1.0, buf);
}

// 6. find_skeleton against raw embedding enumeration.
void criterion_6() {
    auto start = std::chrono::steady_clock::now();
    const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
                                          {2, 1}, {3, 1}, {4, 1}, {5, 1}};
    long disagree = 0, hosts = 0;
    for (int n = 1; n <= 7; ++n)
        for (const Graph& host : enumerate_graphs(n, true)) {
            ++hosts;
            for (auto [d, h] : shapes) {
                RootedTree tree = RootedTree::complete(d, h);
                if (tree.n > 6) continue;
                bool mine = find_skeleton(host, d, h).has_value();
                bool oracle = oracles::skeleton_embedding_exists(host, tree, std::nullopt);
                if (mine != oracle) ++disagree;
                for (int r = 0; r < host.n(); ++r) {
                    bool mine_r = find_skeleton(host, d, h, r).has_value();
                    bool oracle_r = oracles::skeleton_embedding_exists(host, tree, r);
                    if (mine_r != oracle_r) ++disagree;
                }
            }
        }
    double secs = seconds_since(start);
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "skeleton oracle equivalence on %ld hosts x 9 tree shapes (existence and "
                  "per-root), %ld disagreements, %.1fs",
                  hosts, disagree, secs);
    report(6, disagree == 0, buf);
}

// 7. Planted success path: grow, extract, revalidate with the detectors.
void criterion_7() {
    auto start = std::chrono::steady_clock::now();
    long bad = 0, stars = 0, two_levels = 0;
    for (int seed = 1; seed <= 25; ++seed) {
        planted::Instance inst = planted::make_star(28, 0, rat(1, 50), 10000 + seed);
        try {
            Skeleton grown = grow_skeleton(inst.host, rat(2, 5), 1, Rat(20), 1, true);
            if (!validate_skeleton(grown, Rat(20), 1).ok) ++bad;
            Certificate cert = extract_induced_tree(inst.host, grown,
                                                    RootedTree::star(3), rat(2, 5), 1, true);
            const auto* te = std::get_if<TreeEmbedding>(&cert);
            if (!te || !embedding_is_induced(inst.host, te->pattern, te->map)) ++bad;
            else ++stars;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    for (int seed = 1; seed <= 25; ++seed) {
        planted::Instance inst = planted::make(7, 7, 0, rat(1, 60), 20000 + seed);
        try {
            Skeleton grown = grow_skeleton(inst.host, rat(2, 5), 1, Rat(6), 1, true);
            if (!validate_skeleton(grown, Rat(6), 1).ok) ++bad;
            if (!validate_skeleton_structure(inst.skeleton).ok) ++bad;
            RootedTree f = RootedTree::from_parents(0, {-1, 0, 0, 1, 1, 2, 2});
            Certificate cert = extract_induced_tree(inst.host, inst.skeleton, f, rat(2, 5), 1, true);
            const auto* te = std::get_if<TreeEmbedding>(&cert);
            if (!te || !embedding_is_induced(inst.host, te->pattern, te->map)) ++bad;
            else ++two_levels;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    double secs = seconds_since(start);
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "planted skeleton pipeline: %ld star and %ld two-level instances produced "
                  "validated skeletons and detector-confirmed embeddings (grow_skeleton depth 1; "
                  "deeper widths exceed the 64-vertex cap, so depth-2 extraction uses the planted "
                  "skeleton), %ld failures, %.1fs",
                  stars, two_levels, bad, secs);
    report(7, bad == 0 && stars == 25 && two_levels == 25, buf);
}

// 8. Cited chi-binding bounds on the n<=8 corpus.
void criterion_8(const std::vector<Graph>& corpus) {
    auto start = std::chrono::steady_clock::now();
    Graph p5 = generate(FamilySpec::path(5));
    Graph c4 = generate(FamilySpec::cycle(4));
    long bad = 0, rows = 0;
    for (const Graph& g : corpus) {
        bool p5free = !find_induced(g, p5).has_value();
        if (!p5free) continue;
        int chi = chromatic_number(g);
        int omega = clique_number(g);
        ++rows;
        if (!(Rat(chi) <= Rat(int_pow(Int(3), static_cast<unsigned long>(std::max(0, omega - 1))))))
            ++bad;
        if (!find_induced(g, c4).has_value()) {
            if (!(Rat(chi) <= Rat(rat_ceil(Rat(5 * omega - 1, 4))))) ++bad;
        }
    }
    double secs = seconds_since(start);
    char buf[224];
    std::snprintf(buf, sizeof buf,
                  "literature cross-checks ({P5,C4}-free ceil((5w-1)/4) and P5-free 3^{w-1}) on "
                  "%ld P5-free graphs, %ld failures, %.1fs",
                  rows, bad, secs);
    report(8, bad == 0, buf);
}

// 9. Determinism: byte-identical reruns and graph6 round trips.
void criterion_9() {
    auto start = std::chrono::steady_clock::now();
    std::vector<Graph> graphs = load_source("enum:6");
    std::vector<CheckSpec> checks = {
        CheckSpec{"cocktailks", {{"m", "1"}, {"s", "2"}, {"k", "5"}}},
        CheckSpec{"kssparse", {{"s", "2"}}}};
    std::string a = report_to_string(scan(graphs, checks, "det"), "json");
    std::string b = report_to_string(scan(graphs, checks, "det"), "json");
    std::string c = report_to_string(scan(graphs, checks, "det", 1), "json");
    bool scan_ok = (a == b) && (a == c);

    std::vector<Graph> fuzz1 = load_source("random:14,1/2,9,5");
    std::vector<Graph> fuzz2 = load_source("random:14,1/2,9,5");
    bool rand_ok = fuzz1.size() == fuzz2.size();
    for (std::size_t i = 0; rand_ok && i < fuzz1.size(); ++i) rand_ok = fuzz1[i] == fuzz2[i];
    for (const Graph& g : fuzz1) {
        auto outcome = [&]() -> std::string {
            try {
                return certificate_kind(gyarfas_extract(g, 2, 1, 5, true));
            } catch (const CapabilityError&) {
                return "capability";
            }
        };
        rand_ok = rand_ok && outcome() == outcome();
    }

    long roundtrip_bad = 0, corpus_size = 0;
    for (int n = 0; n <= 7; ++n)
        for (const Graph& g : enumerate_graphs(n, true)) {
            ++corpus_size;
            std::string text = write_graph6(g);
            if (!(parse_graph6(text) == g) || write_graph6(parse_graph6(text)) != text)
                ++roundtrip_bad;
        }
    double secs = seconds_since(start);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "determinism: scans byte-identical across reruns and thread counts (%s), seeded "
                  "streams stable (%s), graph6 round trip clean on %ld graphs (n<=7), %.1fs",
                  scan_ok ? "yes" : "NO", rand_ok ? "yes" : "NO", corpus_size, secs);
    report(9, scan_ok && rand_ok && roundtrip_bad == 0, buf);
}

} // namespace

int main() {
    auto start = std::chrono::steady_clock::now();
    std::vector<Graph> corpus = corpus_up_to(8);
    long n8 = static_cast<long>(enumerate_graphs(8, true).size());

    criterion_1(corpus, n8);
    criterion_2(corpus);
    criterion_3(corpus);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(corpus);
    criterion_9();

    double total = seconds_since(start);
    bool time_ok = total <= 900.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "full acceptance wall clock %.1fs (limit 900s)", total);
    report(10, time_ok, buf);

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
