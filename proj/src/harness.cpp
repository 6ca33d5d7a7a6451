#include "chilab/harness.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chilab/detectors.hpp"
#include "chilab/enumerate.hpp"
#include "chilab/family.hpp"
#include "chilab/invariants.hpp"

namespace chilab {

long CheckSpec::param_int(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ParameterError("check '" + id + "' is missing parameter '" + key + "'");
    return to_long(Int(parse_rat(it->second)));
}

Rat CheckSpec::param_rat(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ParameterError("check '" + id + "' is missing parameter '" + key + "'");
    return parse_rat(it->second);
}

std::string CheckSpec::describe() const {
    std::string out = id;
    for (const auto& [k, v] : params) out += " " + k + "=" + v;
    return out;
}

const std::vector<std::string>& known_check_ids() {
    static const std::vector<std::string> ids = {
        "cocktailks",       "broomks-threshold",    "path2-conditional",
        "stablechi-conditional", "kssparse",        "avgdeg-degeneracy",
        "eps-chi-dense-report",  "gyarfas-soundness-fuzz", "literature-sanity"};
    return ids;
}

// ---- literature registry -------------------------------------------------------

namespace {

Rat bound_three_halves(int w) { return Rat(3 * w, 2); }
Rat bound_bgs(int w) { return Rat(rat_ceil(Rat(5 * w - 1, 4))); }
Rat bound_km(int w) { return Rat(rat_ceil(Rat(5 * w, 4))); }
Rat bound_even_hole(int w) { return Rat(2 * w - 1); }
Rat bound_ghm_p5(int w) { return w >= 1 ? Rat(int_pow(Int(3), static_cast<unsigned long>(w - 1))) : Rat(1); }

} // namespace

const std::vector<LiteratureBound>& literature_registry() {
    static const std::vector<LiteratureBound> registry = {
        {"fgmt-p5c4", "{P5,C4}-free: chi <= 3w/2", {FamilySpec::path(5), FamilySpec::cycle(4)}, false,
         bound_three_halves},
        {"bgs-p5c4", "{P5,C4}-free: chi <= ceil((5w-1)/4)", {FamilySpec::path(5), FamilySpec::cycle(4)},
         false, bound_bgs},
        {"gh-p6c4", "{P6,C4}-free: chi <= 3w/2", {FamilySpec::path(6), FamilySpec::cycle(4)}, false,
         bound_three_halves},
        {"km-p6c4", "{P6,C4}-free: chi <= ceil(5w/4)", {FamilySpec::path(6), FamilySpec::cycle(4)}, false,
         bound_km},
        {"cs-evenhole", "even-hole-free: chi <= 2w-1", {}, true, bound_even_hole},
        {"ghm-p5", "P5-free: chi <= 3^{w-1}", {FamilySpec::path(5)}, false, bound_ghm_p5},
    };
    return registry;
}

// ---- sources -------------------------------------------------------------------

std::vector<Graph> load_source(const std::string& source, long seed_offset) {
    auto colon = source.find(':');
    if (colon == std::string::npos) throw ParameterError("source must be enum:N, file:PATH or random:n,p,seed,count");
    std::string kind = source.substr(0, colon);
    std::string rest = source.substr(colon + 1);
    if (kind == "enum") {
        int n = static_cast<int>(to_long(Int(parse_rat(rest))));
        return enumerate_graphs(n, true);
    }
    if (kind == "file") return read_graph_file(rest);
    if (kind == "random") {
        std::vector<std::string> parts;
        std::istringstream iss(rest);
        std::string piece;
        while (std::getline(iss, piece, ',')) parts.push_back(piece);
        if (parts.size() != 4) throw ParameterError("random source needs n,p,seed,count");
        long n = to_long(Int(parse_rat(parts[0])));
        Rat p = parse_rat(parts[1]);
        long seed = to_long(Int(parse_rat(parts[2])));
        long count = to_long(Int(parse_rat(parts[3])));
        std::vector<Graph> out;
        out.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i)
            out.push_back(generate(FamilySpec::random(n, p, seed + seed_offset + i)));
        return out;
    }
    throw ParameterError("unknown source kind '" + kind + "'");
}

// ---- per-graph check evaluation ---------------------------------------------------

namespace {

struct RowCore {
    std::string verdict;
    std::string margin;
    std::string detail;
    bool hypothesis_met = false;
};

RowCore run_check(const Graph& g, const ExactInvariants& inv, const CheckSpec& check,
                  long long chi_budget) {
    RowCore out;
    if (check.id == "cocktailks") {
        int m = static_cast<int>(check.param_int("m"));
        int s = static_cast<int>(check.param_int("s"));
        int k = static_cast<int>(check.param_int("k"));
        if (!is_free(g, std::vector<Graph>{generate(FamilySpec::path(k)),
                                           generate(FamilySpec::cocktail_multi(m, s))})) {
            out.verdict = "skip";
            out.detail = "not {P_k, mK_s-complement}-free";
            return out;
        }
        Threshold thr = threshold_cocktail_ks(m, s, k, inv.omega);
        out.hypothesis_met = true;
        out.margin = rat_str(Rat(inv.chi) / thr.value);
        out.verdict = Rat(inv.chi) < thr.value ? "pass" : "fail";
        if (out.verdict == "fail") out.detail = "chi " + std::to_string(inv.chi) + " >= " + rat_str(thr.value);
        return out;
    }
    if (check.id == "broomks-threshold") {
        int k = static_cast<int>(check.param_int("k"));
        int l = static_cast<int>(check.param_int("l"));
        int s = static_cast<int>(check.param_int("s"));
        int q = static_cast<int>(check.param_int("q"));
        if (!is_free(g, std::vector<Graph>{generate(FamilySpec::broom(k, l))})) {
            out.verdict = "skip";
            out.detail = "not broom-free";
            return out;
        }
        Threshold thr = threshold_broom_ks(k, l, s, q, inv.omega);
        out.margin = rat_str(Rat(inv.chi) / thr.value);
        if (Rat(inv.chi) < thr.value) {
            out.verdict = "skip";
            out.detail = "chi below threshold";
            return out;
        }
        out.hypothesis_met = true;
        auto rich = find_rich_stable_set_bruteforce(g, s, q, chi_budget);
        out.verdict = rich && certificate_is_valid(g, Certificate{*rich}, chi_budget) ? "pass" : "fail";
        return out;
    }
    if (check.id == "path2-conditional") {
        int s = static_cast<int>(check.param_int("s"));
        int q = static_cast<int>(check.param_int("q"));
        int k = static_cast<int>(check.param_int("k"));
        if (!is_free(g, std::vector<Graph>{generate(FamilySpec::path(k))})) {
            out.verdict = "skip";
            out.detail = "not P_k-free";
            return out;
        }
        Threshold thr = threshold_path2(s, k, q, inv.omega);
        out.margin = rat_str(Rat(inv.chi) / thr.value);
        if (Rat(inv.chi) < thr.value) {
            out.verdict = "skip";
            out.detail = "chi below threshold";
            return out;
        }
        out.hypothesis_met = true;
        Certificate cert = gyarfas_extract(g, s, q, k, false, chi_budget);
        bool ok = std::holds_alternative<RichStableSet>(cert) && certificate_is_valid(g, cert, chi_budget);
        out.verdict = ok ? "pass" : "fail";
        if (!ok) out.detail = "certificate kind " + certificate_kind(cert);
        return out;
    }
    if (check.id == "stablechi-conditional") {
        int s = static_cast<int>(check.param_int("s"));
        int q = static_cast<int>(check.param_int("q"));
        if (inv.alpha < s) {
            out.verdict = "skip";
            out.detail = "no stable set of size s";
            return out;
        }
        Threshold thr = threshold_stable_chi(s, q, inv.alpha, inv.omega);
        out.margin = rat_str(thr.value > 0 ? Rat(inv.chi) / thr.value : Rat(0));
        if (Rat(inv.chi) < thr.value) {
            out.verdict = "skip";
            out.detail = "chi below threshold";
            return out;
        }
        out.hypothesis_met = true;
        Certificate cert = stablechi_extract(g, s, q, std::nullopt, chi_budget);
        bool ok = std::holds_alternative<RichStableSet>(cert) && certificate_is_valid(g, cert, chi_budget);
        out.verdict = ok ? "pass" : "fail";
        if (!ok) out.detail = "certificate kind " + certificate_kind(cert);
        return out;
    }
    if (check.id == "kssparse") {
        int s = static_cast<int>(check.param_int("s"));
        if (!is_free(g, std::vector<Graph>{generate(FamilySpec::complete_bipartite(s, s))})) {
            out.verdict = "skip";
            out.detail = "not K_{s,s}-free";
            return out;
        }
        out.hypothesis_met = true;
        RamseyValue r = ramsey(s, inv.omega + 1);
        int t = static_cast<int>(to_long(Int(2) * r.value));
        SparsenessVerdict verdict = is_ct_sparse(g, Rat(1, 4 * s), t);
        out.verdict = verdict.sparse ? "pass" : "fail";
        if (!verdict.sparse)
            out.detail = "violating pair |A|=" + std::to_string(popcount(verdict.a)) +
                         " |B|=" + std::to_string(popcount(verdict.b)) +
                         " e=" + std::to_string(verdict.count);
        return out;
    }
    if (check.id == "avgdeg-degeneracy") {
        int s = static_cast<int>(check.param_int("s"));
        if (!is_free(g, std::vector<Graph>{generate(FamilySpec::complete_bipartite(s, s))})) {
            out.verdict = "skip";
            out.detail = "not K_{s,s}-free";
            return out;
        }
        RamseyValue r = ramsey(s, inv.omega + 1);
        out.verdict = "report";
        out.margin = rat_str(Rat(inv.degeneracy + 1) / Rat(r.value));
        out.detail = "(degeneracy+1)/R ratio";
        return out;
    }
    if (check.id == "eps-chi-dense-report") {
        Rat eps = check.param_rat("eps");
        ChiDenseVerdict verdict = is_eps_chi_dense(g, eps, chi_budget);
        out.verdict = "report";
        out.detail = verdict.dense ? "dense=true"
                                   : "dense=false violating_vertex=" +
                                         std::to_string(verdict.violating_vertex);
        return out;
    }
    if (check.id == "gyarfas-soundness-fuzz") {
        int s = static_cast<int>(check.param_int("s"));
        int q = static_cast<int>(check.param_int("q"));
        int k = static_cast<int>(check.param_int("k"));
        Certificate cert = gyarfas_extract(g, s, q, k, /*force=*/true, chi_budget);
        out.detail = "certificate " + certificate_kind(cert);
        if (std::holds_alternative<HypothesisUnmet>(cert)) {
            out.verdict = "pass";
            return out;
        }
        out.hypothesis_met = true;
        out.verdict = certificate_is_valid(g, cert, chi_budget) ? "pass" : "fail";
        return out;
    }
    if (check.id == "literature-sanity") {
        std::string fails;
        Rat worst(0);
        for (const LiteratureBound& entry : literature_registry()) {
            bool applies = true;
            for (const FamilySpec& f : entry.excluded)
                if (find_induced(g, generate(f))) {
                    applies = false;
                    break;
                }
            if (applies && entry.require_even_hole_free) applies = is_even_hole_free(g);
            if (!applies) continue;
            Rat bound = entry.bound(inv.omega);
            if (bound > 0) { Rat ratio = Rat(inv.chi) / bound; if (ratio > worst) worst = ratio; }
            if (Rat(inv.chi) > bound) fails += (fails.empty() ? "" : ",") + entry.id;
        }
        out.margin = rat_str(worst);
        out.verdict = fails.empty() ? "pass" : "fail";
        if (!fails.empty()) out.detail = "violated: " + fails;
        return out;
    }
    throw ParameterError("unknown check id '" + check.id + "'");
}

std::vector<ScanRow> rows_for(const Graph& g, const std::vector<CheckSpec>& checks,
                              long long chi_budget) {
    std::vector<ScanRow> rows;
    std::string g6 = write_graph6(g);
    ExactInvariants inv{};
    std::string inv_error;
    try {
        inv = exact_invariants(g, chi_budget);
    } catch (const std::exception& e) {
        inv_error = e.what();
    }
    for (const CheckSpec& check : checks) {
        ScanRow row{g6, g.n(), inv.chi, inv.omega, inv.alpha, inv.degeneracy,
                    check.id, "", "", ""};
        if (!inv_error.empty()) {
            row.verdict = "error";
            row.detail = inv_error;
        } else {
            try {
                RowCore core = run_check(g, inv, check, chi_budget);
                row.verdict = core.verdict;
                row.margin = core.margin;
                row.detail = core.detail;
                if (core.hypothesis_met)
                    row.detail = core.detail.empty() ? "hypothesis-met" : core.detail + "; hypothesis-met";
            } catch (const CapabilityError& e) {
                row.verdict = "error";
                row.detail = std::string("capability: ") + e.what();
            } catch (const ParameterError& e) {
                row.verdict = "error";
                row.detail = std::string("parameter: ") + e.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

ScanReport scan(const std::vector<Graph>& graphs, const std::vector<CheckSpec>& checks,
                const std::string& config_note, int threads, long long chi_budget) {
    for (const CheckSpec& check : checks) {
        const auto& ids = known_check_ids();
        if (std::find(ids.begin(), ids.end(), check.id) == ids.end())
            throw ParameterError("unknown check id '" + check.id + "'");
    }
    ScanReport report;
    report.config = config_note;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw ? static_cast<int>(hw) : 1;
    }
    std::size_t chunk = (graphs.size() + static_cast<std::size_t>(threads) - 1) /
                        std::max<std::size_t>(1, static_cast<std::size_t>(threads));
    chunk = std::max<std::size_t>(1, chunk);
    std::vector<std::future<std::vector<ScanRow>>> futures;
    for (std::size_t start = 0; start < graphs.size(); start += chunk) {
        std::size_t stop = std::min(graphs.size(), start + chunk);
        futures.push_back(std::async(std::launch::async, [&, start, stop] {
            std::vector<ScanRow> rows;
            for (std::size_t i = start; i < stop; ++i) {
                auto part = rows_for(graphs[i], checks, chi_budget);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            return rows;
        }));
    }
    for (auto& f : futures) {
        auto rows = f.get();
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }

    ScanSummary& sum = report.summary;
    std::vector<std::pair<Rat, std::string>> margins;
    for (const ScanRow& row : report.rows) {
        ++sum.total_rows;
        if (row.verdict == "pass") ++sum.passed;
        else if (row.verdict == "fail") ++sum.failed;
        else if (row.verdict == "skip") ++sum.skipped;
        else if (row.verdict == "report") ++sum.reported;
        else ++sum.errors;
        if (row.detail.find("hypothesis-met") != std::string::npos) ++sum.hypothesis_met;
        if (!row.margin.empty()) margins.emplace_back(parse_rat(row.margin), row.graph6);
    }
    std::stable_sort(margins.begin(), margins.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < margins.size() && i < 5; ++i)
        sum.top_margins.emplace_back(rat_str(margins[i].first), margins[i].second);
    return report;
}

ExtremalResult extremal_search(const std::vector<Graph>& family, const CheckSpec& bound, int top_k,
                               long budget, long long chi_budget) {
    ExtremalResult out;
    std::vector<std::pair<Rat, std::string>> margins;
    long seen = 0;
    for (const Graph& g : family) {
        if (seen++ >= budget) {
            out.partial = true;
            break;
        }
        ExactInvariants inv = exact_invariants(g, chi_budget);
        RowCore core = run_check(g, inv, bound, chi_budget);
        if (core.margin.empty() || core.verdict == "skip") continue;
        margins.emplace_back(parse_rat(core.margin), write_graph6(g));
    }
    std::stable_sort(margins.begin(), margins.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < margins.size() && i < static_cast<std::size_t>(top_k); ++i)
        out.top.emplace_back(rat_str(margins[i].first), margins[i].second);
    return out;
}

// ---- report emission -----------------------------------------------------------

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace

std::string report_to_string(const ScanReport& report, const std::string& format) {
    if (format == "csv") {
        std::string out = "graph6,n,chi,omega,alpha,degeneracy,check,verdict,margin,detail\n";
        for (const ScanRow& r : report.rows) {
            out += csv_escape(r.graph6) + "," + std::to_string(r.n) + "," + std::to_string(r.chi) +
                   "," + std::to_string(r.omega) + "," + std::to_string(r.alpha) + "," +
                   std::to_string(r.degeneracy) + "," + csv_escape(r.check_id) + "," +
                   csv_escape(r.verdict) + "," + csv_escape(r.margin) + "," + csv_escape(r.detail) +
                   "\n";
        }
        return out;
    }
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["config"] = report.config;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const ScanRow& r : report.rows) {
            nlohmann::ordered_json row;
            row["graph6"] = r.graph6;
            row["n"] = r.n;
            row["chi"] = r.chi;
            row["omega"] = r.omega;
            row["alpha"] = r.alpha;
            row["degeneracy"] = r.degeneracy;
            row["check"] = r.check_id;
            row["verdict"] = r.verdict;
            row["margin"] = r.margin;
            row["detail"] = r.detail;
            doc["rows"].push_back(row);
        }
        nlohmann::ordered_json sum;
        sum["total_rows"] = report.summary.total_rows;
        sum["passed"] = report.summary.passed;
        sum["failed"] = report.summary.failed;
        sum["skipped"] = report.summary.skipped;
        sum["reported"] = report.summary.reported;
        sum["errors"] = report.summary.errors;
        sum["hypothesis_met"] = report.summary.hypothesis_met;
        sum["top_margins"] = nlohmann::ordered_json::array();
        for (const auto& [margin, g6] : report.summary.top_margins) {
            nlohmann::ordered_json entry;
            entry["margin"] = margin;
            entry["graph6"] = g6;
            sum["top_margins"].push_back(entry);
        }
        doc["summary"] = sum;
        return doc.dump(2) + "\n";
    }
    throw ParameterError("unknown report format '" + format + "'");
}

void report_emit(const ScanReport& report, const std::string& format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open report output: " + path);
    out << report_to_string(report, format);
    if (!out) throw ParameterError("failed writing report to " + path);
}

} // namespace chilab
