#ifndef CHILAB_HARNESS_HPP
#define CHILAB_HARNESS_HPP

#include <map>
#include <string>
#include <vector>

#include "chilab/extraction.hpp"
#include "chilab/family.hpp"
#include "chilab/graph.hpp"

namespace chilab {

// One corpus-level check. Parameters are check-specific integers/rationals
// supplied as text so the CLI and report configs stay uniform.
struct CheckSpec {
    std::string id;
    std::map<std::string, std::string> params;

    long param_int(const std::string& key) const;
    Rat param_rat(const std::string& key) const;
    std::string describe() const;
};

// The known check ids, in the fixed order reports use.
const std::vector<std::string>& known_check_ids();

struct ScanRow {
    std::string graph6;
    int n;
    int chi;
    int omega;
    int alpha;
    int degeneracy;
    std::string check_id;
    std::string verdict; // pass | fail | skip | report | error
    std::string margin;  // exact rational "p/q", possibly empty
    std::string detail;
};

struct ScanSummary {
    long total_rows = 0;
    long passed = 0;
    long failed = 0;
    long skipped = 0;
    long reported = 0;
    long errors = 0;
    long hypothesis_met = 0; // conditional checks whose hypothesis held
    std::vector<std::pair<std::string, std::string>> top_margins; // (margin, graph6), best first
};

struct ScanReport {
    std::string config; // reproduces the run: source + checks
    std::vector<ScanRow> rows;
    ScanSummary summary;
};

// Graph stream descriptions: "enum:N" (deduplicated n-vertex classes),
// "file:PATH" (graph6/sparse6 lines), "random:n,p,seed,count" (graph i uses
// seed + seed_offset + i). `seed_offset` comes from the CLI's global --seed.
std::vector<Graph> load_source(const std::string& source, long seed_offset = 0);

// Runs every check on every graph; rows in (graph, check) order; graphs are
// independent, so chunks run on worker threads and a deterministic ordered
// reduce assembles the report.
ScanReport scan(const std::vector<Graph>& graphs, const std::vector<CheckSpec>& checks,
                const std::string& config_note = "", int threads = 0,
                long long chi_budget = kDefaultChiBudget);

// chi / bound-margin maximisation over a family stream; reproducible, flagged
// partial when the budget cuts the stream short.
struct ExtremalResult {
    bool partial = false;
    std::vector<std::pair<std::string, std::string>> top; // (margin, graph6), best first
};
ExtremalResult extremal_search(const std::vector<Graph>& family, const CheckSpec& bound,
                               int top_k, long budget, long long chi_budget = kDefaultChiBudget);

// Stable field order; rationals as "p/q". Formats: "json", "csv".
std::string report_to_string(const ScanReport& report, const std::string& format);
void report_emit(const ScanReport& report, const std::string& format, const std::string& path);

// The cited chi-binding bounds used as a sanity layer; failures flag our
// invariants, not the literature.
struct LiteratureBound {
    std::string id;
    std::string description;
    std::vector<FamilySpec> excluded; // induced-freeness side conditions
    bool require_even_hole_free = false;
    Rat (*bound)(int omega);
};
const std::vector<LiteratureBound>& literature_registry();

} // namespace chilab

#endif
