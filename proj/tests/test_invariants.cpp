#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "chilab/enumerate.hpp"
#include "chilab/family.hpp"
#include "chilab/invariants.hpp"
#include "oracles.hpp"

using namespace chilab;

TEST_CASE("exact invariants on named graphs") {
    ExactInvariants c5 = exact_invariants(generate(FamilySpec::cycle(5)));
    CHECK(c5.chi == 3);
    CHECK(c5.omega == 2);
    CHECK(c5.alpha == 2);
    CHECK(c5.degeneracy == 2);

    ExactInvariants k33 = exact_invariants(generate(FamilySpec::complete_bipartite(3, 3)));
    CHECK(k33.chi == 2);
    CHECK(k33.omega == 2);
    CHECK(k33.alpha == 3);
    CHECK(k33.degeneracy == 3);

    ExactInvariants pet = exact_invariants(oracles::petersen());
    CHECK(pet.chi == 3);
    CHECK(pet.omega == 2);
    CHECK(pet.alpha == 4);
}

TEST_CASE("chromatic number of the squared C5 blowup") {
    Graph b2 = generate(FamilySpec::blowup(FamilySpec::cycle(5), 2));
    ExactInvariants inv = exact_invariants(b2);
    CHECK(inv.omega == 4);
    CHECK(inv.alpha == 4);
    CHECK(inv.chi >= 7); // ceil(25/4), and >= (5/2)^2
    CHECK(inv.chi == 8);
}

TEST_CASE("invariants agree with brute-force oracles on the n<=6 corpus") {
    for (int n = 0; n <= 6; ++n)
        for (const Graph& g : enumerate_graphs(n, true)) {
            ExactInvariants inv = exact_invariants(g);
            CHECK(inv.chi == oracles::chi_oracle(g));
            CHECK(inv.omega == oracles::omega_oracle(g));
            CHECK(inv.alpha == oracles::alpha_oracle(g));
            CHECK(inv.omega <= inv.chi);
            CHECK(inv.chi <= inv.degeneracy + 1);
            CHECK(inv.chi * inv.alpha >= n);
        }
}

TEST_CASE("chromatic number matches the oracle on mid-size random graphs") {
    for (int seed = 0; seed < 20; ++seed) {
        Graph g = generate(FamilySpec::random(10, rat(1, 2), 2000 + seed));
        CHECK(chromatic_number(g) == oracles::chi_oracle(g));
    }
}

TEST_CASE("chromatic search respects its budget") {
    Graph b2 = generate(FamilySpec::blowup(FamilySpec::cycle(5), 2));
    CHECK_THROWS_AS(chromatic_number(b2, 10), CapabilityError);
}

TEST_CASE("lexicographically least stable sets") {
    Graph c5 = generate(FamilySpec::cycle(5));
    auto s = find_stable_set(c5, 2);
    REQUIRE(s.has_value());
    CHECK(*s == (bit(0) | bit(2))); // least nonadjacent pair
    CHECK_FALSE(find_stable_set(c5, 3).has_value());
    CHECK(max_stable_set_lex(generate(FamilySpec::empty(4))) == all_below(4));
}

TEST_CASE("a-connectivity on named graphs") {
    Graph c5 = generate(FamilySpec::cycle(5));
    CHECK(is_a_connected(c5, 2).connected);
    ConnectivityVerdict p4 = is_a_connected(generate(FamilySpec::path(4)), 2);
    CHECK_FALSE(p4.connected);
    CHECK_FALSE(p4.order_violation);
    CHECK(popcount(p4.cutset) == 1); // a cut vertex
    ConnectivityVerdict c53 = is_a_connected(c5, 3);
    CHECK_FALSE(c53.connected);
    CHECK(popcount(c53.cutset) == 2);
    // Complete graphs have no separator at all.
    CHECK(is_a_connected(generate(FamilySpec::complete(4)), 3).connected);
    CHECK_FALSE(is_a_connected(generate(FamilySpec::complete(4)), 4).connected);
    CHECK(is_a_connected(generate(FamilySpec::complete(4)), 4).order_violation);
}

TEST_CASE("a-connectivity witnesses are genuine separations") {
    for (int n = 1; n <= 7; ++n)
        for (const Graph& g : enumerate_graphs(n, true))
            for (int a = 0; a <= 4; ++a) {
                ConnectivityVerdict v = is_a_connected(g, a);
                CHECK(v.connected == oracles::a_connected_oracle(g, a));
                if (!v.connected && !v.order_violation) {
                    CHECK(popcount(v.cutset) < a);
                    CHECK(v.side_a != 0);
                    CHECK(v.side_b != 0);
                    CHECK((v.cutset | v.side_a | v.side_b) == g.vertices());
                    CHECK(edge_pair_count(g, v.side_a, v.side_b) == 0);
                }
            }
}

TEST_CASE("ramsey values: computed rows, table rows, binomial fallback") {
    CHECK(ramsey(1, 9).value == 1);
    CHECK(ramsey(9, 1).value == 1);
    CHECK(ramsey(2, 7).value == 7);
    CHECK(ramsey(2, 7).exact);
    CHECK(ramsey(7, 2).value == 7);
    CHECK(ramsey(3, 3).value == 6);
    CHECK(ramsey(3, 3).exact);
    CHECK(ramsey(4, 5).value == 25);
    RamseyValue r55 = ramsey(5, 5);
    CHECK(r55.value == 70); // C(8,4)
    CHECK_FALSE(r55.exact);
    CHECK_THROWS_AS(ramsey(0, 3), ParameterError);
}

TEST_CASE("R(3,3)=6 verified exhaustively") {
    // Every labelled 6-vertex graph has a triangle or a stable triple...
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << 15); ++code) {
        Graph g = graph_from_code(code, 6);
        bool ok = oracles::omega_oracle(g) >= 3 || oracles::alpha_oracle(g) >= 3;
        if (!ok) {
            CAPTURE(code);
            CHECK(ok);
            break;
        }
    }
    // ...and C5 shows 5 vertices do not suffice.
    Graph c5 = generate(FamilySpec::cycle(5));
    CHECK(oracles::omega_oracle(c5) == 2);
    CHECK(oracles::alpha_oracle(c5) == 2);
}

TEST_CASE("ramsey table is monotone in each argument") {
    for (const RamseyEntry& e : ramsey_table_entries()) {
        CHECK(Int(e.value) >= ramsey(e.s - 1, e.w).value);
        CHECK(Int(e.value) >= ramsey(e.s, e.w - 1).value);
    }
}

TEST_CASE("the shipped table file matches the built-in entries") {
    std::vector<RamseyEntry> builtin = ramsey_table_entries();
    ramsey_table_load(std::string(CHILAB_SOURCE_DIR) + "/data/ramsey_small.txt");
    std::vector<RamseyEntry> loaded = ramsey_table_entries();
    REQUIRE(builtin.size() == loaded.size());
    for (std::size_t i = 0; i < builtin.size(); ++i) {
        CHECK(builtin[i].s == loaded[i].s);
        CHECK(builtin[i].w == loaded[i].w);
        CHECK(builtin[i].value == loaded[i].value);
        CHECK(builtin[i].source == loaded[i].source);
    }
}

TEST_CASE("ramsey table can be reloaded from a file") {
    std::vector<RamseyEntry> original = ramsey_table_entries();
    std::string path = "chilab_test_ramsey.txt";
    {
        std::ofstream out(path);
        out << "# test table\n3 3 6 test\n5 5 48 fictional\n";
    }
    ramsey_table_load(path);
    CHECK(ramsey(5, 5).value == 48);
    CHECK(ramsey(5, 5).exact);
    CHECK(ramsey(4, 4).value == binom(6, 3)); // dropped entry degrades to the bound
    CHECK_FALSE(ramsey(4, 4).exact);
    {
        std::ofstream out(path);
        for (const RamseyEntry& e : original)
            out << e.s << " " << e.w << " " << e.value << " " << e.source << "\n";
    }
    ramsey_table_load(path);
    CHECK(ramsey(4, 4).value == 18);
    CHECK(ramsey(4, 4).exact);
    std::remove(path.c_str());
}

TEST_CASE("edge pair counts") {
    Graph k2 = generate(FamilySpec::complete(2));
    CHECK(edge_pair_count(k2, k2.vertices(), k2.vertices()) == 2);
    Graph k3 = generate(FamilySpec::complete(3));
    CHECK(edge_pair_count(k3, bit(0) | bit(1), bit(1) | bit(2)) == 3);
    for (int n = 2; n <= 6; ++n) {
        Graph kn = generate(FamilySpec::complete(n));
        CHECK(edge_pair_count(kn, kn.vertices(), kn.vertices()) == n * (n - 1));
    }
    // e(A,A) counts each inside edge twice.
    Graph r = generate(FamilySpec::random(10, rat(1, 2), 3));
    for (VSet a : {VSet{0x37}, VSet{0x1ff}, VSet{0x2a}})
        CHECK(edge_pair_count(r, a, a) == 2 * static_cast<long>(r.induced(a).edge_count()));
}

TEST_CASE("sparseness: named verdicts") {
    SparsenessVerdict k5 = is_ct_sparse(generate(FamilySpec::complete(5)), rat(1, 4), 2);
    CHECK_FALSE(k5.sparse);
    // The reported pair must genuinely violate the bound.
    CHECK(Rat(k5.count) > (Rat(1) - rat(1, 4)) * popcount(k5.a) * popcount(k5.b));
    // The all-vertices pair is a violation too: 20 > (3/4)*25.
    Graph k5g = generate(FamilySpec::complete(5));
    CHECK(edge_pair_count(k5g, k5g.vertices(), k5g.vertices()) == 20);

    CHECK(is_ct_sparse(generate(FamilySpec::empty(8)), rat(1, 4), 2).sparse);
    // Petersen is K22-free; the lemma predicts (1/8, 6)-sparseness.
    CHECK(is_ct_sparse(oracles::petersen(), rat(1, 8), 6).sparse);
    CHECK_THROWS_AS(is_ct_sparse(Graph(21), rat(1, 2), 1), CapabilityError);
    CHECK_THROWS_AS(is_ct_sparse(Graph(3), rat(3, 2), 1), ParameterError);
}

TEST_CASE("exhaustive sparseness agrees with the naive oracle") {
    for (int seed = 0; seed < 6; ++seed)
        for (const Rat& p : {rat(1, 3), rat(2, 3)}) {
            Graph g = generate(FamilySpec::random(8, p, seed));
            for (int t = 1; t <= 4; ++t)
                for (const Rat& c : {rat(1, 8), rat(1, 4), rat(1, 2)}) {
                    SparsenessVerdict fast = is_ct_sparse(g, c, t);
                    SparsenessVerdict slow = is_ct_sparse_naive(g, c, t);
                    CHECK(fast.sparse == slow.sparse);
                    if (!fast.sparse)
                        CHECK(Rat(fast.count) > (Rat(1) - c) * popcount(fast.a) * popcount(fast.b));
                }
        }
}

TEST_CASE("sampling refutation is sound and refutation-only") {
    auto hit = sample_refute_sparse(generate(FamilySpec::complete(10)), rat(1, 4), 2, 50, 1);
    REQUIRE(hit.has_value());
    CHECK(Rat(hit->count) > (Rat(1) - rat(1, 4)) * popcount(hit->a) * popcount(hit->b));
    CHECK_FALSE(sample_refute_sparse(generate(FamilySpec::empty(10)), rat(1, 4), 2, 50, 1).has_value());
}

TEST_CASE("eps-chi-density") {
    for (int n = 2; n <= 6; ++n)
        CHECK(is_eps_chi_dense(generate(FamilySpec::complete(n)), rat(1, 100)).dense);
    ChiDenseVerdict c5 = is_eps_chi_dense(generate(FamilySpec::cycle(5)), rat(1, 3));
    CHECK_FALSE(c5.dense);
    CHECK(c5.violating_vertex == 0);
    CHECK(is_eps_chi_dense(generate(FamilySpec::cycle(4)), rat(3, 4)).dense);
    CHECK_THROWS_AS(is_eps_chi_dense(generate(FamilySpec::cycle(4)), rat(0, 1)), ParameterError);
}
