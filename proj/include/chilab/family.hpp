#ifndef CHILAB_FAMILY_HPP
#define CHILAB_FAMILY_HPP

#include <string>
#include <vector>

#include "chilab/graph.hpp"
#include "chilab/rational.hpp"

namespace chilab {

// Recipe for every graph family the generators know how to build.
struct FamilySpec {
    enum class Kind {
        Path,                // Path(k): k vertices
        Cycle,               // Cycle(k): k >= 3
        CompleteBipartite,   // CompleteBipartite(s, s')
        Broom,               // Broom(k, l): k-vertex path with l extra leaves at one end
        CocktailMulti,       // CocktailMulti(m, s): complement of m disjoint K_s
        CompleteMultipartite,// CompleteMultipartite(n1, ..., nk)
        Star,                // Star(l): K_{1,l}
        Complete,            // Complete(n), n >= 0
        Empty,               // Empty(n), n >= 0
        Blowup,              // Blowup(base, k): iterated substitution, depth 0 = K1
        Random,              // Random(n, p, seed)
        Complement,          // Complement(inner)
        DisjointUnion,       // DisjointUnion(specs...)
    };

    Kind kind;
    std::vector<long> ints;
    Rat prob;
    std::vector<FamilySpec> parts;

    static FamilySpec path(long k) { return {Kind::Path, {k}, {}, {}}; }
    static FamilySpec cycle(long k) { return {Kind::Cycle, {k}, {}, {}}; }
    static FamilySpec complete_bipartite(long s, long t) { return {Kind::CompleteBipartite, {s, t}, {}, {}}; }
    static FamilySpec broom(long k, long l) { return {Kind::Broom, {k, l}, {}, {}}; }
    static FamilySpec cocktail_multi(long m, long s) { return {Kind::CocktailMulti, {m, s}, {}, {}}; }
    static FamilySpec complete_multipartite(std::vector<long> sizes) {
        return {Kind::CompleteMultipartite, std::move(sizes), {}, {}};
    }
    static FamilySpec star(long l) { return {Kind::Star, {l}, {}, {}}; }
    static FamilySpec complete(long n) { return {Kind::Complete, {n}, {}, {}}; }
    static FamilySpec empty(long n) { return {Kind::Empty, {n}, {}, {}}; }
    static FamilySpec blowup(FamilySpec base, long depth) { return {Kind::Blowup, {depth}, {}, {std::move(base)}}; }
    static FamilySpec random(long n, Rat p, long seed) { return {Kind::Random, {n, seed}, std::move(p), {}}; }
    static FamilySpec complement_of(FamilySpec inner) { return {Kind::Complement, {}, {}, {std::move(inner)}}; }
    static FamilySpec disjoint_union(std::vector<FamilySpec> specs) {
        return {Kind::DisjointUnion, {}, {}, std::move(specs)};
    }
};

Graph generate(const FamilySpec& spec);

// Textual form used by the CLI and reports, e.g. "broom(8,5)",
// "blowup(cycle(5),2)", "random(14,1/2,7)", "union(path(3),cycle(4))".
FamilySpec parse_family(const std::string& text);
std::string to_string(const FamilySpec& spec);

} // namespace chilab

#endif
