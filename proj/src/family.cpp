#include "chilab/family.hpp"

#include <cctype>

#include "chilab/rng.hpp"

namespace chilab {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

Graph gen_path(long k) {
    require(k >= 1, "path length parameter k must be >= 1");
    Graph g(static_cast<int>(k));
    for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph gen_cycle(long k) {
    require(k >= 3, "cycle length parameter k must be >= 3");
    Graph g(static_cast<int>(k));
    for (int i = 0; i < k; ++i) g.add_edge(i, static_cast<int>((i + 1) % k));
    return g;
}

Graph gen_complete_multipartite(const std::vector<long>& sizes) {
    long total = 0;
    for (long s : sizes) {
        require(s >= 1, "multipartite part size must be >= 1");
        total += s;
    }
    Graph g(static_cast<int>(total));
    std::vector<int> part_of(static_cast<std::size_t>(total));
    int v = 0;
    for (std::size_t p = 0; p < sizes.size(); ++p)
        for (long i = 0; i < sizes[p]; ++i) part_of[static_cast<std::size_t>(v++)] = static_cast<int>(p);
    for (int a = 0; a < total; ++a)
        for (int b = a + 1; b < total; ++b)
            if (part_of[static_cast<std::size_t>(a)] != part_of[static_cast<std::size_t>(b)]) g.add_edge(a, b);
    return g;
}

// Path 0-1-...-(k-1) with leaves k..k+l-1 attached at vertex k-1, so vertex 0
// is the handle tip and vertex k-1 is the star centre.
Graph gen_broom(long k, long l) {
    require(k >= 2, "broom parameter k must be >= 2");
    require(l >= 1, "broom parameter l must be >= 1");
    Graph g(static_cast<int>(k + l));
    for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
    for (long i = 0; i < l; ++i) g.add_edge(static_cast<int>(k - 1), static_cast<int>(k + i));
    return g;
}

Graph gen_random(long n, const Rat& p, long seed) {
    require(n >= 0, "random graph order must be >= 0");
    require(p >= 0 && p <= 1, "edge probability must lie in [0,1]");
    Graph g(static_cast<int>(n));
    // Exact threshold floor(p * 2^64); a draw r yields an edge iff r < threshold.
    Int threshold = (Int(p.get_num()) << 64) / Int(p.get_den());
    SplitMix64 rng(static_cast<std::uint64_t>(seed));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Int draw(static_cast<unsigned long>(rng.next()));
            if (draw < threshold) g.add_edge(i, j);
        }
    return g;
}

} // namespace

Graph generate(const FamilySpec& spec) {
    using K = FamilySpec::Kind;
    switch (spec.kind) {
        case K::Path: return gen_path(spec.ints.at(0));
        case K::Cycle: return gen_cycle(spec.ints.at(0));
        case K::CompleteBipartite: {
            long s = spec.ints.at(0), t = spec.ints.at(1);
            require(s >= 1 && t >= 1, "complete bipartite part sizes must be >= 1");
            return gen_complete_multipartite({s, t});
        }
        case K::Broom: return gen_broom(spec.ints.at(0), spec.ints.at(1));
        case K::CocktailMulti: {
            long m = spec.ints.at(0), s = spec.ints.at(1);
            require(m >= 1 && s >= 1, "cocktail parameters must be >= 1");
            return gen_complete_multipartite(std::vector<long>(static_cast<std::size_t>(m), s));
        }
        case K::CompleteMultipartite:
            require(!spec.ints.empty(), "multipartite needs at least one part");
            return gen_complete_multipartite(spec.ints);
        case K::Star: {
            long l = spec.ints.at(0);
            require(l >= 1, "star leaf count must be >= 1");
            Graph g(static_cast<int>(l + 1));
            for (long i = 1; i <= l; ++i) g.add_edge(0, static_cast<int>(i));
            return g;
        }
        case K::Complete: {
            long n = spec.ints.at(0);
            require(n >= 0, "complete graph order must be >= 0");
            Graph g(static_cast<int>(n));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
            return g;
        }
        case K::Empty: {
            long n = spec.ints.at(0);
            require(n >= 0, "empty graph order must be >= 0");
            return Graph(static_cast<int>(n));
        }
        case K::Blowup: {
            long depth = spec.ints.at(0);
            require(depth >= 0, "blowup depth must be >= 0");
            // Depth 0 is K1 so that the recursion grounds cleanly.
            Graph acc(1);
            Graph base = generate(spec.parts.at(0));
            for (long i = 0; i < depth; ++i) acc = substitute(base, acc);
            return acc;
        }
        case K::Random: return gen_random(spec.ints.at(0), spec.prob, spec.ints.at(1));
        case K::Complement: return generate(spec.parts.at(0)).complement();
        case K::DisjointUnion: {
            require(!spec.parts.empty(), "disjoint union needs at least one part");
            Graph acc = generate(spec.parts.at(0));
            for (std::size_t i = 1; i < spec.parts.size(); ++i)
                acc = disjoint_union(acc, generate(spec.parts.at(i)));
            return acc;
        }
    }
    throw ParameterError("unknown family kind");
}

// ---- spec text parsing -----------------------------------------------------

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParameterError("family spec: " + what + " at position " + std::to_string(pos) +
                             " in '" + text + "'");
    }
};

std::string read_name(Cursor& cur) {
    cur.skip_ws();
    std::string name;
    while (cur.pos < cur.text.size() && std::isalpha(static_cast<unsigned char>(cur.text[cur.pos])))
        name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(cur.text[cur.pos++]))));
    if (name.empty()) cur.fail("expected a family name");
    return name;
}

struct Arg {
    bool is_spec;
    FamilySpec spec;
    Rat number;
};

FamilySpec parse_spec(Cursor& cur);

Arg parse_arg(Cursor& cur) {
    cur.skip_ws();
    if (cur.pos < cur.text.size() &&
        (std::isdigit(static_cast<unsigned char>(cur.text[cur.pos])) || cur.text[cur.pos] == '-')) {
        std::size_t start = cur.pos;
        if (cur.text[cur.pos] == '-') ++cur.pos;
        while (cur.pos < cur.text.size() &&
               (std::isdigit(static_cast<unsigned char>(cur.text[cur.pos])) || cur.text[cur.pos] == '/'))
            ++cur.pos;
        return {false, {}, parse_rat(cur.text.substr(start, cur.pos - start))};
    }
    return {true, parse_spec(cur), {}};
}

long arg_int(const Arg& a, Cursor& cur) {
    if (a.is_spec || a.number.get_den() != 1) cur.fail("expected an integer argument");
    return to_long(Int(a.number.get_num()));
}

FamilySpec parse_spec(Cursor& cur) {
    std::string name = read_name(cur);
    std::vector<Arg> args;
    if (cur.eat('(')) {
        if (!cur.eat(')')) {
            do {
                args.push_back(parse_arg(cur));
            } while (cur.eat(','));
            if (!cur.eat(')')) cur.fail("expected ')'");
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k) cur.fail(name + " takes " + std::to_string(k) + " argument(s)");
    };
    auto ints_of = [&]() {
        std::vector<long> out;
        out.reserve(args.size());
        for (const Arg& a : args) out.push_back(arg_int(a, cur));
        return out;
    };
    if (name == "path") { want(1); return FamilySpec::path(arg_int(args[0], cur)); }
    if (name == "cycle") { want(1); return FamilySpec::cycle(arg_int(args[0], cur)); }
    if (name == "completebipartite" || name == "cbip") {
        want(2);
        return FamilySpec::complete_bipartite(arg_int(args[0], cur), arg_int(args[1], cur));
    }
    if (name == "broom") { want(2); return FamilySpec::broom(arg_int(args[0], cur), arg_int(args[1], cur)); }
    if (name == "cocktail") { want(2); return FamilySpec::cocktail_multi(arg_int(args[0], cur), arg_int(args[1], cur)); }
    if (name == "multipartite") {
        if (args.empty()) cur.fail("multipartite needs part sizes");
        return FamilySpec::complete_multipartite(ints_of());
    }
    if (name == "star") { want(1); return FamilySpec::star(arg_int(args[0], cur)); }
    if (name == "complete") { want(1); return FamilySpec::complete(arg_int(args[0], cur)); }
    if (name == "empty") { want(1); return FamilySpec::empty(arg_int(args[0], cur)); }
    if (name == "blowup") {
        want(2);
        if (!args[0].is_spec) cur.fail("blowup base must be a family spec");
        return FamilySpec::blowup(args[0].spec, arg_int(args[1], cur));
    }
    if (name == "random") {
        want(3);
        if (args[1].is_spec) cur.fail("random probability must be a rational");
        return FamilySpec::random(arg_int(args[0], cur), args[1].number, arg_int(args[2], cur));
    }
    if (name == "complement") {
        want(1);
        if (!args[0].is_spec) cur.fail("complement takes a family spec");
        return FamilySpec::complement_of(args[0].spec);
    }
    if (name == "union") {
        if (args.empty()) cur.fail("union needs at least one part");
        std::vector<FamilySpec> parts;
        for (const Arg& a : args) {
            if (!a.is_spec) cur.fail("union parts must be family specs");
            parts.push_back(a.spec);
        }
        return FamilySpec::disjoint_union(std::move(parts));
    }
    cur.fail("unknown family '" + name + "'");
}

} // namespace

FamilySpec parse_family(const std::string& text) {
    Cursor cur{text};
    FamilySpec spec = parse_spec(cur);
    cur.skip_ws();
    if (cur.pos != cur.text.size()) cur.fail("trailing input");
    return spec;
}

std::string to_string(const FamilySpec& spec) {
    using K = FamilySpec::Kind;
    auto join_ints = [&](const char* name) {
        std::string out = name;
        out += '(';
        for (std::size_t i = 0; i < spec.ints.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(spec.ints[i]);
        }
        out += ')';
        return out;
    };
    switch (spec.kind) {
        case K::Path: return join_ints("path");
        case K::Cycle: return join_ints("cycle");
        case K::CompleteBipartite: return join_ints("completebipartite");
        case K::Broom: return join_ints("broom");
        case K::CocktailMulti: return join_ints("cocktail");
        case K::CompleteMultipartite: return join_ints("multipartite");
        case K::Star: return join_ints("star");
        case K::Complete: return join_ints("complete");
        case K::Empty: return join_ints("empty");
        case K::Blowup:
            return "blowup(" + to_string(spec.parts[0]) + "," + std::to_string(spec.ints[0]) + ")";
        case K::Random:
            return "random(" + std::to_string(spec.ints[0]) + "," + rat_str(spec.prob) + "," +
                   std::to_string(spec.ints[1]) + ")";
        case K::Complement: return "complement(" + to_string(spec.parts[0]) + ")";
        case K::DisjointUnion: {
            std::string out = "union(";
            for (std::size_t i = 0; i < spec.parts.size(); ++i) {
                if (i) out += ',';
                out += to_string(spec.parts[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

} // namespace chilab
