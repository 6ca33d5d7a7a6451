#ifndef CHILAB_EXTRACTION_HPP
#define CHILAB_EXTRACTION_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chilab/graph.hpp"
#include "chilab/invariants.hpp"
#include "chilab/rational.hpp"

namespace chilab {

// ---- theorem thresholds -----------------------------------------------------

struct Threshold {
    enum class Kind { CocktailKS, Path2, BroomKS, StableChi, KappaChi };
    Kind kind;
    Rat value;
    bool exact; // false once the Ramsey entry degraded to the binomial bound
    std::string describe() const;
};

// (2 s^{k-3})^{m-1} (4s+1) R(s, omega+1), m >= 1, s >= 2, k >= 3.
Threshold threshold_cocktail_ks(int m, int s, int k, int omega);
// s^{k-3} (2q + 7 s R(s, omega+1) - 7 s), k >= 5, s >= 2, q >= 1.
Threshold threshold_path2(int s, int k, int q, int omega);
// 7 s^k l^{s+1} (q + R(s, omega+1)), k >= 2, l >= 1, s >= 2, q >= 1.
Threshold threshold_broom_ks(int k, int l, int s, int q, int omega);
// C(alpha, s) q + alpha^{s-1} R(s, omega+1), s >= 2, q >= 1.
Threshold threshold_stable_chi(int s, int q, int alpha, int omega);
// 4a - 1, a >= 1.
Threshold threshold_kappa_chi(long a);

// ---- certificates -----------------------------------------------------------

// Stable set S with chromatic number of its common neighbourhood above q.
struct RichStableSet {
    VSet stable;
    VSet common;     // intersection of open neighbourhoods in the whole graph
    int chi_common;
    int q;
};

struct InducedPathWitness {
    std::vector<int> vertices; // in path order
    int k;
};

// Path vertices 0..k-1 (tip to centre) followed by the l leaves.
struct InducedBroomWitness {
    std::vector<int> vertices;
    int k;
    int l;
};

struct TreeEmbedding {
    Graph pattern;          // the rooted tree as a plain graph
    std::vector<int> map;   // pattern vertex -> host vertex
};

struct AlphaExceeds {
    int bound;
    VSet witness; // stable set of size bound+1
};

struct HypothesisUnmet {
    Rat threshold;
    bool threshold_exact;
    int actual_chi;
    std::string note; // which requirement stopped the run
};

using Certificate = std::variant<RichStableSet, InducedPathWitness, InducedBroomWitness,
                                 TreeEmbedding, AlphaExceeds, HypothesisUnmet>;

std::string certificate_kind(const Certificate& cert);

// Independent revalidation: stability and sizes rechecked directly, chromatic
// numbers recomputed from scratch, embeddings verified edge by edge.
bool certificate_is_valid(const Graph& g, const Certificate& cert,
                          long long chi_budget = kDefaultChiBudget);

// ---- operations ---------------------------------------------------------------

// Complete oracle for the conclusion of the path theorem: lexicographically
// least stable s-set whose common neighbourhood has chromatic number > q.
std::optional<RichStableSet> find_rich_stable_set_bruteforce(const Graph& g, int s, int q,
                                                             long long chi_budget = kDefaultChiBudget);

// Validated search for an (a+1)-connected induced subgraph F with
// chi(F) >= chi(G) - 2a + 1: greedy peel along small cuts (keeping the
// higher-chromatic side) with an exhaustive fallback for n <= 12. Returns the
// vertex set of F; throws CapabilityError when the search cannot deliver.
VSet hc_subgraph(const Graph& g, const Int& a, long long chi_budget = kDefaultChiBudget);

// Optional trace of the path-growing loop, exposed for tests.
struct ExtractionTrace {
    Rat a;
    Rat r;
    std::vector<Rat> fvals; // fvals[i] = f(i+1)
    struct Step {
        std::vector<int> path;
        VSet j_set;
        VSet l_set;
        VSet z_set;
        Rat b;
    };
    std::vector<Step> steps;
};

// The Gyarfas-path argument as an algorithm. Unforced runs require
// chi(G) >= threshold_path2; forced runs execute the same machinery and stop
// with HypothesisUnmet wherever the guarantees run out. Returned certificates
// always revalidate.
Certificate gyarfas_extract(const Graph& g, int s, int q, int k, bool force = false,
                            long long chi_budget = kDefaultChiBudget,
                            ExtractionTrace* trace = nullptr);

// The broom analogue: connectivity and degree demands use
// B = l C(l,s) q + l^s R, the loop runs to p <= k-1, and the overflow exit
// assembles a (k,l)-broom witness.
Certificate broom_extract(const Graph& g, int k, int l, int s, int q, bool force = false,
                          long long chi_budget = kDefaultChiBudget,
                          ExtractionTrace* trace = nullptr);

// Pigeonhole extraction over a maximum stable set. With a_opt set, first
// applies the order test |G| >= a C(a,s) q + a^s R and reports AlphaExceeds
// when the stability number is above a_opt.
Certificate stablechi_extract(const Graph& g, int s, int q, std::optional<int> a_opt = std::nullopt,
                              long long chi_budget = kDefaultChiBudget);

} // namespace chilab

#endif
