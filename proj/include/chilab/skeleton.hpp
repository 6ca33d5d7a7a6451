#ifndef CHILAB_SKELETON_HPP
#define CHILAB_SKELETON_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chilab/extraction.hpp"
#include "chilab/graph.hpp"
#include "chilab/rational.hpp"

namespace chilab {

// Thrown by skeleton growers whose spec-level outcome "HypothesisUnmet" is an
// error rather than a certificate. Callers that report certificates convert it.
class HypothesisUnmetError : public std::runtime_error {
public:
    HypothesisUnmetError(const std::string& what, Rat threshold, Rat actual)
        : std::runtime_error(what + " (threshold " + rat_str(threshold) + ", actual " +
                             rat_str(actual) + ")"),
          threshold_(std::move(threshold)),
          actual_(std::move(actual)) {}
    const Rat& threshold() const { return threshold_; }
    const Rat& actual() const { return actual_; }

private:
    Rat threshold_;
    Rat actual_;
};

// ---- rooted trees -------------------------------------------------------------

// Tree node count is NOT capped at 64: wide skeleton domains map many tree
// nodes onto few host vertices. Node subsets therefore use vector<char>.
struct RootedTree {
    int n = 0;
    int root = 0;
    std::vector<int> parent;                 // parent[root] = -1
    std::vector<std::vector<int>> children;  // derived
    std::vector<int> height;                 // derived, distance to root
    int depth = 0;                           // derived

    static RootedTree from_parents(int root, std::vector<int> parents);
    // Every internal vertex has exactly `arity` children, uniform depth.
    static RootedTree complete(int arity, int depth);
    static RootedTree path(int depth); // depth+1 nodes rooted at one end
    static RootedTree star(int leaves);
    // Roots an (unrooted) tree given as a graph; validates acyclicity.
    static RootedTree from_graph(const Graph& tree, int root);

    Graph to_graph() const;
    bool is_internal(int v) const { return !children[static_cast<std::size_t>(v)].empty(); }
    // Depth of the subtree at `node` restricted to `domain` (-1 if node outside).
    int domain_depth(int node, const std::vector<char>& domain) const;
};

// Half the average degree, |E|/|V|; 0 for the empty graph.
Rat half_average_degree(const Graph& g);

// ---- the Phi recurrence ---------------------------------------------------------

// Phi(c,0) = 0, Phi(c,1) = 1, Phi(c,h+1) = (Phi(c,h)+2)(4/c)^{h+1}.
// The recurrence is cross-checked against the closed form on every call.
Rat phi(const Rat& c, int h);
Rat phi_closed_form(const Rat& c, int h);

// ---- skeletons ----------------------------------------------------------------

struct Skeleton {
    RootedTree tree;
    Graph host;
    std::vector<int> map; // tree node -> host vertex
};

struct SkeletonVerdict {
    bool ok;
    std::string what; // first violated condition, empty when ok
};

// Homomorphism, local injectivity, induced root-to-leaf paths, and
// (d,h)-wideness ("at least d children" read as >= ceil(d)).
SkeletonVerdict validate_skeleton(const Skeleton& sk, const Rat& d, int h);
// The structural part only (no wideness demand).
SkeletonVerdict validate_skeleton_structure(const Skeleton& sk);

// ---- avoiding subtrees (eps-good / eps-nice) ---------------------------------------

// node_best[u] is the largest eps such that the subtree at u carries an
// eps-subtree whose image avoids the forbidden set (-1: u's own image is
// forbidden; leaves cap at 1). The verdict for the whole skeleton is
// node_best[root]: an eps-subtree avoiding `forbidden` exists iff
// 0 < eps <= node_best[root].
struct AvoidingSubtree {
    std::vector<Rat> node_best;
    Rat best_eps;
};

// `exempt_root` tags the eps-nice variant: the root's image may (and must)
// meet the forbidden set, every other node's image may not.
AvoidingSubtree max_avoiding_subtree(const Skeleton& sk, VSet forbidden, bool exempt_root = false);

// Witness extraction for a feasible eps: includes every node of value >= eps
// reachable through such nodes; the result is an eps-subtree.
std::vector<char> subtree_witness_for(const Skeleton& sk, const AvoidingSubtree& avoiding,
                                      const Rat& eps);

// v is eps-good when some eps-subtree's image avoids N[v] entirely; eps-nice
// when the image meets N[v] exactly in the skeleton's root.
bool is_eps_good(const Skeleton& sk, int host_vertex, const Rat& eps);
bool is_eps_nice(const Skeleton& sk, int host_vertex, const Rat& eps);

// ---- the sparse toolbox ------------------------------------------------------------

struct SparsePairResult {
    int vertex;  // least v in A with at least c|B| non-neighbours in B
    VSet subset; // all of A with at least (c/2)|B| non-neighbours in B
};

// Preconditions (A, B disjoint nonempty, e(A,B) <= (1-c)|A||B|) are checked;
// both outputs are revalidated by direct counting.
SparsePairResult lemma_sparse(const Graph& g, VSet a, VSet b, const Rat& c);

struct ShrinkWitness {
    int y;                     // host vertex
    std::vector<char> subtree; // tree-node mask of a 2(c/4)^{h+1}-subtree avoiding N[y]
};

struct ShrinkResult {
    VSet y_set;
    std::vector<ShrinkWitness> witnesses; // ascending by host vertex
};

// The recursive shrink: given a ((4/c)^h t, h)-wide skeleton and X disjoint
// from the image and from N(root image), |X| >= (4/c)^h t, returns Y of size
// >= (c/4)^h |X| that is 2(c/4)^{h+1}-good, with an explicit witness subtree
// per element. `strict` gates the size/width preconditions (forced pipelines
// run the mechanics regardless); counting shortfalls always raise
// InvariantViolation naming the failed inequality, which on such inputs is a
// sparseness refutation.
ShrinkResult sparse_shrink(const Graph& g, const Skeleton& sk, VSet x, const Rat& c, int t,
                           bool strict = true);

// ---- skeleton search ---------------------------------------------------------------

inline constexpr long long kDefaultSkeletonBudget = 50'000'000;

// Complete backtracking search for a (d,h)-skeleton (integer d >= 1): returns
// one rooted at `root` (or anywhere) or nullopt iff none exists. Deterministic
// witness: lexicographically least feasible candidates throughout.
std::optional<Skeleton> find_skeleton(const Graph& g, long d, int h,
                                      std::optional<int> root = std::nullopt,
                                      long long budget = kDefaultSkeletonBudget);

// One growth step: either an induced J with d(J) >= d(G) - 2(4/c)^{h+1} d and
// no ((4/c)^{h+1} d, h)-skeleton (verified), or a (d,h+1)-skeleton.
struct StepResult {
    bool grew;
    Skeleton skeleton; // when grew
    VSet j_set;        // when !grew
};

StepResult build_skeleton_step(const Graph& g, const Rat& c, int t, const Rat& d, int h,
                               bool strict = true, long long budget = kDefaultSkeletonBudget,
                               long long chi_budget = kDefaultChiBudget);

// The counting-branch assembly behind build_skeleton_step: given depth-h
// skeletons keyed by root, find a vertex that is eps_nice-nice for at least
// ceil(d) of them and graft those witnesses into a (d,h+1)-skeleton. Within
// the 64-vertex cap the lemma's own width (4/c)^{h+1} d always exceeds any
// degree, so this path is reachable only with directly supplied skeletons;
// planted tests drive it through this seam.
std::optional<Skeleton> assemble_from_nice(const Graph& g, const std::map<int, Skeleton>& rooted,
                                           const Rat& eps_nice, const Rat& d, int h, bool strict);

// Induction over build_skeleton_step: a (d,h)-skeleton in any (c,t)-sparse G
// with d(G) >= Phi(c,h) d. Throws HypothesisUnmetError below the threshold
// unless forced; forced runs return whatever the machinery honestly yields.
Skeleton grow_skeleton(const Graph& g, const Rat& c, int t, const Rat& d, int h,
                       bool force = false, long long budget = kDefaultSkeletonBudget);

// The turn: extracts an induced copy of the rooted tree `f` from a
// sufficiently wide skeleton by the reservation bookkeeping loop.
Certificate extract_induced_tree(const Graph& g, const Skeleton& sk, const RootedTree& f,
                                 const Rat& c, int t, bool force = false,
                                 long long chi_budget = kDefaultChiBudget);

// End-to-end: grow a skeleton of width (c/4)^{-3h|F|} t at the radius-cover
// depth of F, then extract. F is re-rooted at the lexicographically least
// eccentricity minimiser.
Certificate sparse_tree(const Graph& g, const Graph& f, const Rat& c, int t, bool force = false,
                        long long budget = kDefaultSkeletonBudget,
                        long long chi_budget = kDefaultChiBudget);

} // namespace chilab

#endif
