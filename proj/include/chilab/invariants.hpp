#ifndef CHILAB_INVARIANTS_HPP
#define CHILAB_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "chilab/graph.hpp"
#include "chilab/rational.hpp"

namespace chilab {

inline constexpr long long kDefaultChiBudget = 100'000'000;

// ---- clique / stable set ----------------------------------------------------

// Maximum clique by branch and bound with a greedy colouring bound.
VSet max_clique(const Graph& g);
int clique_number(const Graph& g);
int stability_number(const Graph& g);

// Lexicographically least clique/stable set of the requested size, if any.
std::optional<VSet> find_clique(const Graph& g, int size);
std::optional<VSet> find_stable_set(const Graph& g, int size);

// Maximum stable set whose sorted vertex list is lexicographically least
// among maximum stable sets.
VSet max_stable_set_lex(const Graph& g);

// ---- colouring ---------------------------------------------------------------

// Exact chromatic number: maximum-clique seeding, DSATUR upper bound, then a
// k-colourability branch and bound. Throws CapabilityError once the node
// budget is exhausted.
int chromatic_number(const Graph& g, long long budget = kDefaultChiBudget);

int degeneracy(const Graph& g);

struct ExactInvariants {
    int chi;
    int omega;
    int alpha;
    int degeneracy;
};
ExactInvariants exact_invariants(const Graph& g, long long chi_budget = kDefaultChiBudget);

// ---- connectivity -------------------------------------------------------------

// Witness for "not a-connected": either the order violation |V| <= a, or a
// separating set of size < a together with the two anticomplete sides.
struct ConnectivityVerdict {
    bool connected;
    bool order_violation = false;
    VSet cutset = 0;
    VSet side_a = 0;
    VSet side_b = 0;
};

// |V(G)| > a and no separating set of fewer than a vertices.
ConnectivityVerdict is_a_connected(const Graph& g, int a);

// Minimum u-v vertex cut for nonadjacent u, v (Menger via unit-capacity flow),
// early-exited once the flow reaches `cap`.
int vertex_cut_between(const Graph& g, int u, int v, int cap, VSet* cut_out = nullptr);

// ---- Ramsey numbers -----------------------------------------------------------

struct RamseyValue {
    Int value;
    bool exact;
};

// R(s,w). Exact values come from the bundled table (plus the definitional
// rows R(1,w) = R(s,1) = 1, R(2,w) = w, R(s,2) = s); anything else degrades
// to the flagged binomial bound C(s+w-2, s-1).
RamseyValue ramsey(int s, int w);
// Small convenience for thresholds: value as Rat.
Rat ramsey_value(int s, int w);

// Replace the built-in table from a file of lines "s w value source".
void ramsey_table_load(const std::string& path);
struct RamseyEntry {
    int s, w;
    long value;
    std::string source;
};
std::vector<RamseyEntry> ramsey_table_entries();

// ---- density / sparseness -------------------------------------------------------

// Ordered adjacent pairs in A x B; an edge inside A∩B contributes twice.
long edge_pair_count(const Graph& g, VSet a, VSet b);

struct SparsenessVerdict {
    bool sparse;
    VSet a = 0;
    VSet b = 0;
    long count = 0; // e_G(A,B) of the violating pair
};

// Exhaustive (c,t)-sparseness test, sound and complete, for n <= 20. For a
// fixed A the densest B of each size is the greedy one, so only those are
// tried.
SparsenessVerdict is_ct_sparse(const Graph& g, const Rat& c, int t);

// Plain all-pairs enumeration, kept as an oracle (n <= 14).
SparsenessVerdict is_ct_sparse_naive(const Graph& g, const Rat& c, int t);

// Refutation-only sampling for graphs beyond the exhaustive cap: a returned
// pair is a genuine violation; finding none proves nothing.
std::optional<SparsenessVerdict> sample_refute_sparse(const Graph& g, const Rat& c, int t,
                                                      int samples, std::uint64_t seed);

// ---- chromatic density -----------------------------------------------------------

struct ChiDenseVerdict {
    bool dense;
    int violating_vertex = -1; // first v with chi(G \ N[v]) >= eps * chi(G)
};

// Every vertex's non-neighbourhood induces chromatic number < eps * chi(G).
ChiDenseVerdict is_eps_chi_dense(const Graph& g, const Rat& eps,
                                 long long chi_budget = kDefaultChiBudget);

} // namespace chilab

#endif
