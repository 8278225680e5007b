#include "ledgergraph/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ledgergraph/csv.hpp"
#include "ledgergraph/errors.hpp"
#include "ledgergraph/format.hpp"
#include "ledgergraph/parallel.hpp"

namespace ledgergraph {

namespace {

TopSummary top_of(const CentralityReport& report) {
    auto top = top_nodes(report, 1);
    if (top.empty()) return {};
    return {top.front().node_id, top.front().normalized};
}

FitOutcome run_fit(const DegreeSequence& seq, const TailFitOptions& options) {
    FitOutcome outcome;
    try {
        outcome.result = likelihood_ratio_test(seq, options);
    } catch (const DataError& e) {
        outcome.error = e.what();
    }
    return outcome;
}

std::string percent_or_empty(const LrTally& tally) {
    if (tally.reliable == 0) return "";
    char buf[24];
    std::snprintf(buf, sizeof buf, "%.1f",
                  100.0 * static_cast<double>(tally.preferred) /
                      static_cast<double>(tally.reliable));
    return buf;
}

void tally_fit(LrTally& tally, const FitOutcome& fit, double significance) {
    if (!fit.result) return;
    ++tally.tested;
    if (fit.result->p_value < significance) {
        ++tally.reliable;
        if (fit.result->verdict == TailVerdict::PowerLawPreferred) ++tally.preferred;
    }
}

std::ofstream open_report(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write report file " + path.string());
    return out;
}

} // namespace

CompanyStats analyze_entries(std::span<const JournalEntry> entries,
                             const AnalyzeOptions& options) {
    CompanyStats stats;
    if (!entries.empty()) stats.company_id = entries.front().company_id();
    try {
        FinancialStatementsNetwork net = build_network(entries, options.build);
        stats.company_id = net.company_id;
        stats.entries = net.entry_count;
        stats.unbalanced_entries = net.unbalanced_entries;
        stats.n_fa = net.fa.size();
        stats.n_bp = net.bp.size();
        stats.n_edges = net.edges.size();

        BipartiteGraph graph = BipartiteGraph::from_network(net);
        NodeLabels labels = NodeLabels::for_network(net);

        DiameterResult diam = diameter(graph, options.workers);
        stats.diameter = diam.value;
        stats.diameter_policy = diam.policy;

        CentralityOptions copts = options.centrality;
        copts.workers = options.workers;
        stats.top_degree = top_of(degree_centrality(graph, labels));
        stats.top_closeness = top_of(closeness_centrality(graph, labels, copts));
        stats.top_betweenness = top_of(betweenness_centrality(graph, labels, copts));

        stats.fa_fit = run_fit(degree_sequence_for(graph, Partition::FA), options.tail);
        stats.bp_fit = run_fit(degree_sequence_for(graph, Partition::BP), options.tail);
        stats.ok = true;
    } catch (const std::exception& e) {
        stats.ok = false;
        stats.error = e.what();
    }
    return stats;
}

CompanyStats analyze_company(const std::filesystem::path& dataset,
                             const AnalyzeOptions& options) {
    std::ifstream in(dataset, std::ios::binary);
    if (!in) {
        CompanyStats stats;
        stats.company_id = dataset.stem().string();
        stats.error = "cannot open dataset " + dataset.string();
        return stats;
    }
    try {
        IngestResult parsed = parse_journal_csv(in, options.ingest);
        return analyze_entries(parsed.entries, options);
    } catch (const std::exception& e) {
        CompanyStats stats;
        stats.company_id = dataset.stem().string();
        stats.error = e.what();
        return stats;
    }
}

std::map<std::string, std::string> load_industry_map(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot open industry map " + file.string());
    CsvReader reader(in);
    std::vector<std::string> fields;
    std::size_t line_no = 0;
    if (!reader.next(fields, line_no) || fields.size() < 2 ||
        fields[0] != "company_id" || fields[1] != "industry_code")
        throw DataError("industry map must start with header company_id,industry_code");
    std::map<std::string, std::string> map;
    while (reader.next(fields, line_no)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 2)
            throw ParseError(line_no, "industry map rows need exactly 2 columns");
        map[fields[0]] = fields[1];
    }
    return map;
}

std::vector<CompanyStats> analyze_directory(const std::filesystem::path& dir,
                                            const std::map<std::string, std::string>& industry,
                                            const AnalyzeOptions& options) {
    std::vector<std::filesystem::path> datasets;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() != ".csv") continue;
        if (entry.path().filename() == "industry_map.csv") continue;
        datasets.push_back(entry.path());
    }
    if (datasets.empty()) throw DataError("no datasets (*.csv) found in " + dir.string());
    std::sort(datasets.begin(), datasets.end());

    std::vector<CompanyStats> rows(datasets.size());
    AnalyzeOptions per_company = options;
    per_company.workers = 1; // parallelism spent across companies instead
    parallel_blocks(datasets.size(), options.workers,
                    [&](std::size_t begin, std::size_t end, unsigned) {
                        for (std::size_t i = begin; i < end; ++i)
                            rows[i] = analyze_company(datasets[i], per_company);
                    });

    for (CompanyStats& row : rows) {
        auto it = industry.find(row.company_id);
        row.industry = it != industry.end() ? it->second : "UNKNOWN";
    }
    std::sort(rows.begin(), rows.end(),
              [](const CompanyStats& a, const CompanyStats& b) {
                  return a.company_id < b.company_id;
              });
    return rows;
}

CohortSummary summarize_cohort(std::span<const CompanyStats> stats) {
    if (stats.empty()) throw DataError("empty cohort: no company records to summarize");

    CohortSummary summary;
    summary.companies_total = stats.size();

    bool first = true;
    double fa_sum = 0, bp_sum = 0, diam_sum = 0;
    for (const CompanyStats& row : stats) {
        if (!row.ok) {
            ++summary.companies_failed;
            continue;
        }
        ++summary.companies_ok;
        ++summary.industry_counts[row.industry];
        fa_sum += static_cast<double>(row.n_fa);
        bp_sum += static_cast<double>(row.n_bp);
        diam_sum += row.diameter;
        if (first) {
            summary.fa_min = summary.fa_max = row.n_fa;
            summary.bp_min = summary.bp_max = row.n_bp;
            summary.diameter_min = summary.diameter_max = row.diameter;
            first = false;
        } else {
            summary.fa_min = std::min(summary.fa_min, row.n_fa);
            summary.fa_max = std::max(summary.fa_max, row.n_fa);
            summary.bp_min = std::min(summary.bp_min, row.n_bp);
            summary.bp_max = std::max(summary.bp_max, row.n_bp);
            summary.diameter_min = std::min(summary.diameter_min, row.diameter);
            summary.diameter_max = std::max(summary.diameter_max, row.diameter);
        }

        double significance_fa =
            row.fa_fit.result ? row.fa_fit.result->significance : 0.1;
        double significance_bp =
            row.bp_fit.result ? row.bp_fit.result->significance : 0.1;
        tally_fit(summary.fa_lr, row.fa_fit, significance_fa);
        tally_fit(summary.bp_lr, row.bp_fit, significance_bp);
        auto& [fa_tally, bp_tally] = summary.industry_lr[row.industry];
        tally_fit(fa_tally, row.fa_fit, significance_fa);
        tally_fit(bp_tally, row.bp_fit, significance_bp);
    }
    if (summary.companies_ok > 0) {
        double n = static_cast<double>(summary.companies_ok);
        summary.fa_mean = fa_sum / n;
        summary.bp_mean = bp_sum / n;
        summary.diameter_mean = diam_sum / n;
    }
    return summary;
}

namespace {

void append_fit_fields(std::vector<std::string>& row, const FitOutcome& fit) {
    if (fit.result) {
        const TailFitResult& r = *fit.result;
        row.push_back(std::to_string(r.x_min));
        row.push_back(format_double(r.alpha));
        row.push_back(format_double(r.lambda));
        row.push_back(std::to_string(r.n_tail));
        row.push_back(format_double(r.log_likelihood_ratio));
        row.push_back(format_double(r.p_value));
        row.push_back(verdict_name(r.verdict));
        row.push_back("");
    } else {
        for (int i = 0; i < 7; ++i) row.push_back("");
        row.push_back(fit.error);
    }
}

void write_companies_csv(std::ostream& out, std::span<const CompanyStats> stats) {
    std::vector<std::string> row = {
        "company_id",     "industry",       "status",
        "error",          "n_fa",           "n_bp",
        "n_edges",        "entries",        "unbalanced_entries",
        "diameter",       "diameter_policy", "top_degree_node",
        "top_degree",     "top_closeness_node", "top_closeness",
        "top_betweenness_node", "top_betweenness", "fa_x_min",
        "fa_alpha",       "fa_lambda",      "fa_n_tail",
        "fa_lr",          "fa_p",           "fa_verdict",
        "fa_fit_error",   "bp_x_min",       "bp_alpha",
        "bp_lambda",      "bp_n_tail",      "bp_lr",
        "bp_p",           "bp_verdict",     "bp_fit_error"};
    write_csv_row(out, row);
    for (const CompanyStats& s : stats) {
        row.clear();
        row.push_back(s.company_id);
        row.push_back(s.industry);
        row.push_back(s.ok ? "ok" : "failed");
        row.push_back(s.error);
        if (s.ok) {
            row.push_back(std::to_string(s.n_fa));
            row.push_back(std::to_string(s.n_bp));
            row.push_back(std::to_string(s.n_edges));
            row.push_back(std::to_string(s.entries));
            row.push_back(std::to_string(s.unbalanced_entries));
            row.push_back(std::to_string(s.diameter));
            row.push_back(s.diameter_policy == DiameterPolicy::WholeGraph
                              ? "whole_graph"
                              : "largest_component");
            row.push_back(s.top_degree.node_id);
            row.push_back(format_double(s.top_degree.normalized));
            row.push_back(s.top_closeness.node_id);
            row.push_back(format_double(s.top_closeness.normalized));
            row.push_back(s.top_betweenness.node_id);
            row.push_back(format_double(s.top_betweenness.normalized));
            append_fit_fields(row, s.fa_fit);
            append_fit_fields(row, s.bp_fit);
        } else {
            while (row.size() < 33) row.push_back("");
        }
        write_csv_row(out, row);
    }
}

void write_summary_csv(std::ostream& out, const CohortSummary& s) {
    auto line = [&](const std::string& metric, const std::string& value) {
        out << metric << ',' << value << '\n';
    };
    out << "metric,value\n";
    line("companies_total", std::to_string(s.companies_total));
    line("companies_ok", std::to_string(s.companies_ok));
    line("companies_failed", std::to_string(s.companies_failed));
    bool any = s.companies_ok > 0;
    line("fa_nodes_mean", any ? format_double(s.fa_mean) : "");
    line("fa_nodes_min", any ? std::to_string(s.fa_min) : "");
    line("fa_nodes_max", any ? std::to_string(s.fa_max) : "");
    line("bp_nodes_mean", any ? format_double(s.bp_mean) : "");
    line("bp_nodes_min", any ? std::to_string(s.bp_min) : "");
    line("bp_nodes_max", any ? std::to_string(s.bp_max) : "");
    line("diameter_mean", any ? format_double(s.diameter_mean) : "");
    line("diameter_min", any ? std::to_string(s.diameter_min) : "");
    line("diameter_max", any ? std::to_string(s.diameter_max) : "");
    line("fa_power_law_pct", percent_or_empty(s.fa_lr));
    line("fa_reliable_tests", std::to_string(s.fa_lr.reliable));
    line("fa_tested", std::to_string(s.fa_lr.tested));
    line("bp_power_law_pct", percent_or_empty(s.bp_lr));
    line("bp_reliable_tests", std::to_string(s.bp_lr.reliable));
    line("bp_tested", std::to_string(s.bp_lr.tested));
}

void write_histograms(const std::filesystem::path& out_dir,
                      std::span<const CompanyStats> stats) {
    // Node counts span orders of magnitude, so bins double in width.
    auto bin_of = [](std::uint64_t value) {
        std::size_t b = 0;
        std::uint64_t high = 2;
        while (value >= high) {
            ++b;
            high <<= 1;
        }
        return b;
    };
    std::map<std::size_t, std::uint64_t> fa_bins, bp_bins;
    std::map<std::uint32_t, std::uint64_t> diam_counts;
    for (const CompanyStats& s : stats) {
        if (!s.ok) continue;
        ++fa_bins[bin_of(s.n_fa)];
        ++bp_bins[bin_of(s.n_bp)];
        ++diam_counts[s.diameter];
    }

    std::ofstream fig2 = open_report(out_dir / "fig2_hist.csv");
    fig2 << "partition,bin_low,bin_high,count\n";
    auto emit_bins = [&](const char* name, const std::map<std::size_t, std::uint64_t>& bins) {
        for (const auto& [b, count] : bins) {
            std::uint64_t low = b == 0 ? 1 : (1ULL << b);
            std::uint64_t high = 1ULL << (b + 1);
            fig2 << name << ',' << low << ',' << high << ',' << count << '\n';
        }
    };
    emit_bins("bp", bp_bins);
    emit_bins("fa", fa_bins);

    std::ofstream fig3 = open_report(out_dir / "fig3_hist.csv");
    fig3 << "diameter,count\n";
    if (!diam_counts.empty()) {
        std::uint32_t lo = diam_counts.begin()->first;
        std::uint32_t hi = diam_counts.rbegin()->first;
        for (std::uint32_t d = lo; d <= hi; ++d) {
            auto it = diam_counts.find(d);
            fig3 << d << ',' << (it == diam_counts.end() ? 0 : it->second) << '\n';
        }
    }
}

} // namespace

void write_cohort_reports(const std::filesystem::path& out_dir,
                          std::span<const CompanyStats> stats, const CohortSummary& summary) {
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream out = open_report(out_dir / "companies.csv");
        write_companies_csv(out, stats);
    }
    {
        std::ofstream out = open_report(out_dir / "summary.csv");
        write_summary_csv(out, summary);
    }
    {
        std::ofstream out = open_report(out_dir / "table1.csv");
        out << "industry,companies\n";
        for (const auto& [industry, count] : summary.industry_counts)
            out << csv_escape(industry) << ',' << count << '\n';
    }
    {
        std::ofstream out = open_report(out_dir / "table2.csv");
        out << "node_type,power_law_vs_exponential_pct,reliable_tests,tested\n";
        out << "degree_fa," << percent_or_empty(summary.fa_lr) << ','
            << summary.fa_lr.reliable << ',' << summary.fa_lr.tested << '\n';
        out << "degree_bp," << percent_or_empty(summary.bp_lr) << ','
            << summary.bp_lr.reliable << ',' << summary.bp_lr.tested << '\n';
    }
    {
        std::ofstream out = open_report(out_dir / "table3.csv");
        out << "industry,fa_pct,fa_reliable,fa_tested,bp_pct,bp_reliable,bp_tested\n";
        for (const auto& [industry, tallies] : summary.industry_lr) {
            const auto& [fa, bp] = tallies;
            out << csv_escape(industry) << ',' << percent_or_empty(fa) << ',' << fa.reliable
                << ',' << fa.tested << ',' << percent_or_empty(bp) << ',' << bp.reliable
                << ',' << bp.tested << '\n';
        }
    }
    write_histograms(out_dir, stats);
}

} // namespace ledgergraph
