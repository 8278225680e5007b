#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ledgergraph/centrality.hpp"
#include "ledgergraph/fsn.hpp"
#include "ledgergraph/graph.hpp"
#include "ledgergraph/journal.hpp"
#include "ledgergraph/tail_fit.hpp"

namespace ledgergraph {

struct FitOutcome {
    std::optional<TailFitResult> result;
    std::string error; // set when the fit could not run (e.g. tiny tails)
};

struct TopSummary {
    std::string node_id;
    double normalized = 0.0;
};

struct CompanyStats {
    std::string company_id;
    std::string industry;
    bool ok = false;
    std::string error; // pipeline failure annotation; company kept in the row set

    std::uint64_t n_fa = 0;
    std::uint64_t n_bp = 0;
    std::uint64_t n_edges = 0;
    std::uint64_t entries = 0;
    std::uint64_t unbalanced_entries = 0;
    std::uint32_t diameter = 0;
    DiameterPolicy diameter_policy = DiameterPolicy::WholeGraph;

    TopSummary top_degree;
    TopSummary top_closeness;
    TopSummary top_betweenness;

    FitOutcome fa_fit;
    FitOutcome bp_fit;
};

struct AnalyzeOptions {
    IngestConfig ingest;
    FsnBuildOptions build;
    CentralityOptions centrality;
    TailFitOptions tail;
    unsigned workers = 0; // worker pool for the company-level parallelism
};

// Full per-company pipeline. Failures at any stage come back as an
// annotated record instead of an exception so one bad dataset cannot sink
// a cohort run.
CompanyStats analyze_company(const std::filesystem::path& dataset,
                             const AnalyzeOptions& options = {});
CompanyStats analyze_entries(std::span<const JournalEntry> entries,
                             const AnalyzeOptions& options = {});

struct LrTally {
    std::size_t preferred = 0; // power law preferred at p < significance
    std::size_t reliable = 0;  // tests with p < significance, either direction
    std::size_t tested = 0;    // fits that produced a verdict at all
};

struct CohortSummary {
    std::size_t companies_total = 0;
    std::size_t companies_ok = 0;
    std::size_t companies_failed = 0;

    double fa_mean = 0.0;
    std::uint64_t fa_min = 0, fa_max = 0;
    double bp_mean = 0.0;
    std::uint64_t bp_min = 0, bp_max = 0;
    double diameter_mean = 0.0;
    std::uint32_t diameter_min = 0, diameter_max = 0;

    LrTally fa_lr;
    LrTally bp_lr;

    std::map<std::string, std::size_t> industry_counts;               // ok companies
    std::map<std::string, std::pair<LrTally, LrTally>> industry_lr;   // (fa, bp)
};

// Aggregates in sorted company order; throws DataError on an empty cohort.
CohortSummary summarize_cohort(std::span<const CompanyStats> stats);

std::map<std::string, std::string> load_industry_map(const std::filesystem::path& file);

// Analyzes every *.csv dataset under dir (except the industry map) with a
// bounded worker pool and returns rows sorted by company id.
std::vector<CompanyStats> analyze_directory(const std::filesystem::path& dir,
                                            const std::map<std::string, std::string>& industry,
                                            const AnalyzeOptions& options = {});

// Writes companies.csv, summary.csv, table1.csv, table2.csv, table3.csv,
// fig2_hist.csv and fig3_hist.csv into out_dir.
void write_cohort_reports(const std::filesystem::path& out_dir,
                          std::span<const CompanyStats> stats, const CohortSummary& summary);

} // namespace ledgergraph
