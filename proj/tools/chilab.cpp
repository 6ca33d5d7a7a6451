#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chilab/detectors.hpp"
#include "chilab/enumerate.hpp"
#include "chilab/extraction.hpp"
#include "chilab/family.hpp"
#include "chilab/graph.hpp"
#include "chilab/harness.hpp"
#include "chilab/invariants.hpp"
#include "chilab/skeleton.hpp"

namespace {

using namespace chilab;

// "id:key=val,key=val" -> CheckSpec
CheckSpec parse_check(const std::string& text) {
    CheckSpec spec;
    auto colon = text.find(':');
    spec.id = text.substr(0, colon == std::string::npos ? text.size() : colon);
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t at = 0;
        while (at < rest.size()) {
            auto comma = rest.find(',', at);
            std::string piece = rest.substr(at, comma == std::string::npos ? std::string::npos : comma - at);
            auto eq = piece.find('=');
            if (eq == std::string::npos) throw ParameterError("check parameter needs key=value: " + piece);
            spec.params[piece.substr(0, eq)] = piece.substr(eq + 1);
            if (comma == std::string::npos) break;
            at = comma + 1;
        }
    }
    return spec;
}

void emit_graph(const Graph& g, const std::string& out_path) {
    std::string text = write_graph6(g) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParameterError("cannot open output file: " + out_path);
        out << text;
    }
}

void print_certificate(const Graph& g, const Certificate& cert) {
    std::cout << "certificate: " << certificate_kind(cert) << "\n";
    if (const auto* rs = std::get_if<RichStableSet>(&cert)) {
        std::cout << "  stable set:";
        CHILAB_FOR_VSET(v, rs->stable) std::cout << " " << v;
        std::cout << "\n  common neighbourhood:";
        CHILAB_FOR_VSET(v, rs->common) std::cout << " " << v;
        std::cout << "\n  chi(common) = " << rs->chi_common << " > q = " << rs->q << "\n";
    } else if (const auto* pw = std::get_if<InducedPathWitness>(&cert)) {
        std::cout << "  path:";
        for (int v : pw->vertices) std::cout << " " << v;
        std::cout << "\n";
    } else if (const auto* bw = std::get_if<InducedBroomWitness>(&cert)) {
        std::cout << "  broom (path then leaves):";
        for (int v : bw->vertices) std::cout << " " << v;
        std::cout << "\n";
    } else if (const auto* te = std::get_if<TreeEmbedding>(&cert)) {
        std::cout << "  embedding:";
        for (std::size_t i = 0; i < te->map.size(); ++i)
            std::cout << " " << i << "->" << te->map[i];
        std::cout << "\n";
    } else if (const auto* ae = std::get_if<AlphaExceeds>(&cert)) {
        std::cout << "  stability number exceeds " << ae->bound << "; witness:";
        CHILAB_FOR_VSET(v, ae->witness) std::cout << " " << v;
        std::cout << "\n";
    } else if (const auto* hu = std::get_if<HypothesisUnmet>(&cert)) {
        std::cout << "  threshold " << rat_str(hu->threshold)
                  << (hu->threshold_exact ? "" : " (upper-bound Ramsey entry)")
                  << ", chi = " << hu->actual_chi;
        if (!hu->note.empty()) std::cout << " [" << hu->note << "]";
        std::cout << "\n";
    }
    std::cout << "revalidated: " << (certificate_is_valid(g, cert) ? "yes" : "NO") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact laboratory for Ramsey-type chi-bounds, induced-subgraph extraction, and sparse tree embedding"};
    app.require_subcommand(1);

    std::string ramsey_table;
    long long budget = kDefaultChiBudget;
    long seed = 0;
    app.add_option("--ramsey-table", ramsey_table, "path to a Ramsey table file (s w value source)");
    app.add_option("--budget", budget, "search node budget");
    app.add_option("--seed", seed, "seed for randomised commands");

    auto* gen = app.add_subcommand("gen", "generate a family member as graph6");
    std::string gen_spec, gen_out;
    gen->add_option("spec", gen_spec, "family spec, e.g. broom(8,5)")->required();
    gen->add_option("--out", gen_out, "output file (default stdout)");

    auto* inv = app.add_subcommand("inv", "exact invariants of a graph6 graph");
    std::string inv_g6;
    inv->add_option("graph6", inv_g6)->required();

    auto* free_cmd = app.add_subcommand("free", "induced-pattern freeness");
    std::string free_g6, free_pattern;
    free_cmd->add_option("graph6", free_g6)->required();
    free_cmd->add_option("--pattern", free_pattern, "pattern family spec")->required();

    auto* extract = app.add_subcommand("extract", "run an extraction procedure");
    std::string ex_kind, ex_g6;
    int ex_s = 2, ex_q = 1, ex_k = 5, ex_l = 1;
    bool ex_force = false;
    extract->add_option("kind", ex_kind, "gyarfas | broom | stablechi")->required();
    extract->add_option("graph6", ex_g6)->required();
    extract->add_option("--s", ex_s);
    extract->add_option("--q", ex_q);
    extract->add_option("--k", ex_k);
    extract->add_option("--l", ex_l);
    extract->add_flag("--force", ex_force, "run below the theorem threshold");

    auto* skel = app.add_subcommand("skeleton", "skeleton search and growth");
    skel->set_help_flag("--help", "print help");
    std::string sk_mode, sk_g6, sk_c = "1/4", sk_d = "1";
    int sk_t = 1, sk_h = 1;
    bool sk_force = false;
    skel->add_option("mode", sk_mode, "find | grow | step")->required();
    skel->add_option("graph6", sk_g6)->required();
    skel->add_option("--c", sk_c, "sparseness parameter c as p/q");
    skel->add_option("--t", sk_t);
    skel->add_option("--d", sk_d, "width demand (rational)");
    skel->add_option("--h", sk_h);
    skel->add_flag("--force", sk_force);

    auto* tree = app.add_subcommand("tree", "induced tree extraction end to end");
    std::string tr_g6, tr_target, tr_c = "1/4";
    int tr_t = 1;
    bool tr_force = false;
    tree->add_option("graph6", tr_g6)->required();
    tree->add_option("--target", tr_target, "tree family spec")->required();
    tree->add_option("--c", tr_c);
    tree->add_option("--t", tr_t);
    tree->add_flag("--force", tr_force);

    auto* scan_cmd = app.add_subcommand("scan", "run checks over a graph stream");
    std::string scan_source, scan_format = "csv", scan_out;
    std::vector<std::string> scan_checks;
    scan_cmd->add_option("--source", scan_source, "enum:N | file:PATH | random:n,p,seed,count")->required();
    scan_cmd->add_option("--check", scan_checks, "check id with params, e.g. cocktailks:m=1,s=2,k=5")
        ->required();
    scan_cmd->add_option("--format", scan_format, "json | csv");
    scan_cmd->add_option("--out", scan_out, "output file (default stdout)");

    auto* extremal = app.add_subcommand("extremal", "top margin graphs for a bound");
    std::string xt_source, xt_bound;
    int xt_top = 5;
    long xt_budget = 1000000;
    extremal->add_option("--source", xt_source)->required();
    extremal->add_option("--bound", xt_bound, "check spec whose margin is maximised")->required();
    extremal->add_option("--top", xt_top);
    extremal->add_option("--graphs", xt_budget, "maximum graphs examined");

    try {
        app.parse(argc, argv);
        if (!ramsey_table.empty()) ramsey_table_load(ramsey_table);

        if (*gen) {
            emit_graph(generate(parse_family(gen_spec)), gen_out);
            return 0;
        }
        if (*inv) {
            Graph g = parse_graph_line(inv_g6);
            ExactInvariants e = exact_invariants(g, budget);
            std::cout << "n " << g.n() << "\nedges " << g.edge_count() << "\nchi " << e.chi
                      << "\nomega " << e.omega << "\nalpha " << e.alpha << "\ndegeneracy "
                      << e.degeneracy << "\n";
            return 0;
        }
        if (*free_cmd) {
            Graph g = parse_graph_line(free_g6);
            auto hit = find_induced(g, PatternSpec::of(parse_family(free_pattern)));
            if (hit) {
                std::cout << "contains induced " << free_pattern << ":";
                for (int v : *hit) std::cout << " " << v;
                std::cout << "\n";
            } else {
                std::cout << "free of " << free_pattern << "\n";
            }
            return 0;
        }
        if (*extract) {
            Graph g = parse_graph_line(ex_g6);
            Certificate cert = [&]() -> Certificate {
                if (ex_kind == "gyarfas") return gyarfas_extract(g, ex_s, ex_q, ex_k, ex_force, budget);
                if (ex_kind == "broom") return broom_extract(g, ex_k, ex_l, ex_s, ex_q, ex_force, budget);
                if (ex_kind == "stablechi")
                    return stablechi_extract(g, ex_s, ex_q,
                                             extract->count("--l") ? std::optional<int>(ex_l)
                                                                   : std::nullopt,
                                             budget);
                throw ParameterError("extract kind must be gyarfas, broom or stablechi");
            }();
            print_certificate(g, cert);
            return certificate_is_valid(g, cert) ? 0 : 1;
        }
        if (*skel) {
            Graph g = parse_graph_line(sk_g6);
            Rat c = parse_rat(sk_c);
            Rat d = parse_rat(sk_d);
            if (sk_mode == "find") {
                auto sk = find_skeleton(g, to_long(rat_ceil(d)), sk_h, std::nullopt, budget);
                if (!sk) {
                    std::cout << "no (" << rat_str(d) << "," << sk_h << ")-skeleton\n";
                    return 0;
                }
                std::cout << "skeleton with " << sk->tree.n << " nodes rooted at host vertex "
                          << sk->map[0] << "\n";
                return 0;
            }
            if (sk_mode == "grow") {
                try {
                    Skeleton sk = grow_skeleton(g, c, sk_t, d, sk_h, sk_force, budget);
                    std::cout << "grew a (" << rat_str(d) << "," << sk_h << ")-skeleton with "
                              << sk.tree.n << " nodes rooted at " << sk.map[0] << "\n";
                    return 0;
                } catch (const HypothesisUnmetError& e) {
                    std::cout << "hypothesis unmet: " << e.what() << "\n";
                    return 0;
                }
            }
            if (sk_mode == "step") {
                StepResult step = build_skeleton_step(g, c, sk_t, d, sk_h, !sk_force, budget);
                if (step.grew)
                    std::cout << "grew a depth-" << (sk_h + 1) << " skeleton with " << step.skeleton.tree.n
                              << " nodes rooted at " << step.skeleton.map[0] << "\n";
                else {
                    std::cout << "induced subgraph J with no wide skeleton:";
                    CHILAB_FOR_VSET(v, step.j_set) std::cout << " " << v;
                    std::cout << "\n";
                }
                return 0;
            }
            throw ParameterError("skeleton mode must be find, grow or step");
        }
        if (*tree) {
            Graph g = parse_graph_line(tr_g6);
            Graph target = generate(parse_family(tr_target));
            Certificate cert = sparse_tree(g, target, parse_rat(tr_c), tr_t, tr_force, budget, budget);
            print_certificate(g, cert);
            return certificate_is_valid(g, cert) ? 0 : 1;
        }
        if (*scan_cmd) {
            std::vector<CheckSpec> checks;
            std::string config = "source=" + scan_source;
            for (const std::string& text : scan_checks) {
                checks.push_back(parse_check(text));
                config += " check=" + text;
            }
            ScanReport report = scan(load_source(scan_source, seed), checks, config, 0, budget);
            if (scan_out.empty())
                std::cout << report_to_string(report, scan_format);
            else
                report_emit(report, scan_format, scan_out);
            std::cerr << "rows " << report.summary.total_rows << " pass " << report.summary.passed
                      << " fail " << report.summary.failed << " skip " << report.summary.skipped
                      << " report " << report.summary.reported << " error " << report.summary.errors
                      << " hypothesis-met " << report.summary.hypothesis_met << "\n";
            return report.summary.failed > 0 ? 1 : 0;
        }
        if (*extremal) {
            ExtremalResult result =
                extremal_search(load_source(xt_source, seed), parse_check(xt_bound), xt_top, xt_budget, budget);
            for (const auto& [margin, g6] : result.top)
                std::cout << margin << " " << g6 << "\n";
            if (result.partial) std::cerr << "partial: budget exhausted\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
