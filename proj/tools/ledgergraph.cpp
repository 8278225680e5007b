// ledgergraph: build bipartite financial statements networks from journal
// entries, compute bipartite-normalized statistics, and test degree
// distributions for heavy tails.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ledgergraph/centrality.hpp"
#include "ledgergraph/cohort.hpp"
#include "ledgergraph/csv.hpp"
#include "ledgergraph/errors.hpp"
#include "ledgergraph/format.hpp"
#include "ledgergraph/fsn.hpp"
#include "ledgergraph/graph.hpp"
#include "ledgergraph/journal.hpp"
#include "ledgergraph/synth.hpp"
#include "ledgergraph/tail_fit.hpp"

namespace lg = ledgergraph;

namespace {

lg::IngestConfig ingest_config_from(const std::vector<std::string>& column_map) {
    lg::IngestConfig config;
    for (const std::string& item : column_map) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw lg::DataError("--column-map expects key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        bool known = false;
        for (const std::string& canonical : lg::IngestConfig::canonical_columns())
            if (canonical == key) known = true;
        if (!known) throw lg::DataError("--column-map: unknown field '" + key + "'");
        config.columns[key] = item.substr(eq + 1);
    }
    return config;
}

lg::FinancialStatementsNetwork load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lg::DataError("cannot open network file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return lg::network_from_json(buffer.str());
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lg::DataError("cannot write output file " + path);
    out << bytes;
}

lg::DegreeSequence sequence_for_nodes(const lg::FinancialStatementsNetwork& net,
                                      const std::string& nodes) {
    lg::BipartiteGraph graph = lg::BipartiteGraph::from_network(net);
    return lg::degree_sequence_for(graph,
                                   nodes == "bp" ? lg::Partition::BP : lg::Partition::FA);
}

struct StatsRow {
    std::string company;
    std::uint64_t n_fa = 0, n_bp = 0, n_edges = 0, entries = 0, unbalanced = 0;
    std::size_t components = 0;
    std::uint32_t largest_component = 0;
    bool diameter_defined = false;
    lg::DiameterResult diam;
};

StatsRow compute_stats(const lg::FinancialStatementsNetwork& net, unsigned workers) {
    StatsRow row;
    row.company = net.company_id;
    row.n_fa = net.fa.size();
    row.n_bp = net.bp.size();
    row.n_edges = net.edges.size();
    row.entries = net.entry_count;
    row.unbalanced = net.unbalanced_entries;
    lg::BipartiteGraph graph = lg::BipartiteGraph::from_network(net);
    lg::Components comps = lg::connected_components(graph);
    row.components = comps.count();
    std::uint32_t largest = 0;
    for (std::uint32_t size : comps.sizes) largest = std::max(largest, size);
    row.largest_component = largest;
    if (graph.edge_count() > 0) {
        row.diam = lg::diameter(graph, workers);
        row.diameter_defined = true;
    }
    return row;
}

std::string stats_to_csv(const StatsRow& row) {
    std::string out =
        "company,n_fa,n_bp,n_edges,entries,unbalanced_entries,components,"
        "largest_component,diameter,diameter_policy\n";
    out += lg::csv_escape(row.company);
    out += ',' + std::to_string(row.n_fa);
    out += ',' + std::to_string(row.n_bp);
    out += ',' + std::to_string(row.n_edges);
    out += ',' + std::to_string(row.entries);
    out += ',' + std::to_string(row.unbalanced);
    out += ',' + std::to_string(row.components);
    out += ',' + std::to_string(row.largest_component);
    if (row.diameter_defined) {
        out += ',' + std::to_string(row.diam.value);
        out += row.diam.policy == lg::DiameterPolicy::WholeGraph ? ",whole_graph"
                                                                 : ",largest_component";
    } else {
        out += ",,undefined";
    }
    out += '\n';
    return out;
}

std::string stats_to_json(const StatsRow& row) {
    nlohmann::json j;
    j["company"] = row.company;
    j["n_fa"] = row.n_fa;
    j["n_bp"] = row.n_bp;
    j["n_edges"] = row.n_edges;
    j["entries"] = row.entries;
    j["unbalanced_entries"] = row.unbalanced;
    j["components"] = row.components;
    j["largest_component"] = row.largest_component;
    if (row.diameter_defined) {
        j["diameter"] = row.diam.value;
        j["diameter_policy"] = row.diam.policy == lg::DiameterPolicy::WholeGraph
                                   ? "whole_graph"
                                   : "largest_component";
    } else {
        j["diameter"] = nullptr;
        j["diameter_policy"] = "undefined";
    }
    return j.dump();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Financial statements network toolkit: converts journal-entry CSVs "
                 "into bipartite account/process networks and computes "
                 "bipartite-normalized statistics"};
    app.require_subcommand(1);

    unsigned workers = 0;
    app.add_option("--workers", workers,
                   "Worker threads for graph sweeps and cohort runs (0 = all cores)")
        ->envname("LEDGERGRAPH_WORKERS");

    // ---- build ----------------------------------------------------------
    auto* build = app.add_subcommand("build", "Build a network from a journal-entry CSV");
    std::string build_input, build_output;
    std::vector<std::string> build_column_map;
    std::string build_pattern = "directed";
    std::size_t build_cap = 100000;
    bool build_no_cap = false;
    build->add_option("--input", build_input, "Journal-entry CSV")->required();
    build->add_option("--output", build_output, "Network JSON path")->required();
    build->add_option("--column-map", build_column_map,
                      "Override a CSV header name, e.g. entry_id=doc_no (repeatable)");
    build->add_option("--pattern", build_pattern, "Pattern identity: directed keeps the "
                      "debit/credit split, undirected collapses it")
        ->check(CLI::IsMember({"directed", "undirected"}));
    build->add_option("--cap", build_cap, "Refuse networks above this node count")
        ->check(CLI::PositiveNumber);
    build->add_flag("--no-cap", build_no_cap, "Disable the node cap");

    // ---- stats ----------------------------------------------------------
    auto* stats = app.add_subcommand("stats", "Size statistics of a network");
    std::string stats_network, stats_out, stats_format = "csv";
    stats->add_option("--network", stats_network, "Network JSON")->required();
    stats->add_option("--out", stats_out, "Output path (default: stdout)");
    stats->add_option("--format", stats_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- centrality -----------------------------------------------------
    auto* centrality = app.add_subcommand("centrality", "Degree, closeness or betweenness "
                                          "centrality with bipartite normalization");
    std::string cent_network, cent_measure, cent_out, cent_format = "csv";
    std::string cent_normalization = "own-partition";
    std::string cent_betweenness = "geodesic-fraction";
    std::size_t cent_top = 0;
    centrality->add_option("--network", cent_network, "Network JSON")->required();
    centrality->add_option("--measure", cent_measure, "Centrality measure")
        ->required()
        ->check(CLI::IsMember({"degree", "closeness", "betweenness"}));
    centrality->add_option("--normalization", cent_normalization,
                           "own-partition normalizes by the node's own partition maximum; "
                           "paper-literal applies the constants crosswise")
        ->check(CLI::IsMember({"own-partition", "paper-literal"}));
    centrality->add_option("--betweenness-mode", cent_betweenness,
                           "geodesic-fraction counts shortest-path fractions; "
                           "length-weighted scores 1/distance per pair (small networks only)")
        ->check(CLI::IsMember({"geodesic-fraction", "length-weighted"}));
    centrality->add_option("--top", cent_top, "Emit only the top-k nodes (0 = all)");
    centrality->add_option("--out", cent_out, "Output path (default: stdout)");
    centrality->add_option("--format", cent_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- fit ------------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "Power-law vs exponential likelihood-ratio test "
                                   "on a degree distribution");
    std::string fit_network, fit_nodes, fit_out;
    double fit_significance = 0.1;
    std::size_t fit_min_tail = 10;
    fit->add_option("--network", fit_network, "Network JSON")->required();
    fit->add_option("--nodes", fit_nodes, "Which partition's degrees to fit")
        ->required()
        ->check(CLI::IsMember({"fa", "bp"}));
    fit->add_option("--significance", fit_significance, "p-value threshold for a verdict")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    fit->add_option("--min-tail", fit_min_tail, "Smallest usable tail size")
        ->check(CLI::PositiveNumber);
    fit->add_option("--out", fit_out, "Output path (default: stdout)");

    // ---- plotdata -------------------------------------------------------
    auto* plotdata = app.add_subcommand("plotdata", "Empirical and fitted distribution "
                                        "curves (pdf/cdf/ccdf) for log-log plots");
    std::string plot_network, plot_nodes, plot_out;
    double plot_significance = 0.1;
    std::size_t plot_min_tail = 10;
    plotdata->add_option("--network", plot_network, "Network JSON")->required();
    plotdata->add_option("--nodes", plot_nodes, "Which partition's degrees to plot")
        ->required()
        ->check(CLI::IsMember({"fa", "bp"}));
    plotdata->add_option("--significance", plot_significance, "p-value threshold")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    plotdata->add_option("--min-tail", plot_min_tail, "Smallest usable tail size")
        ->check(CLI::PositiveNumber);
    plotdata->add_option("--out", plot_out, "Output path (default: stdout)");

    // ---- synth ----------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic cohort of "
                                     "journal-entry datasets");
    lg::CohortSynthConfig synth_config;
    std::uint64_t synth_entries = 1000;
    bool entries_min_set = false, entries_max_set = false;
    std::string synth_out_dir;
    std::string synth_industries = "CRS,HLP,LE,PF,RTL";
    synth->add_option("--seed", synth_config.base.seed, "Cohort seed");
    synth->add_option("--companies", synth_config.n_companies, "Number of companies")
        ->check(CLI::PositiveNumber);
    synth->add_option("--accounts", synth_config.base.n_accounts, "Accounts per company")
        ->check(CLI::PositiveNumber);
    synth->add_option("--entries", synth_entries, "Journal entries per company")
        ->check(CLI::PositiveNumber);
    synth->add_option("--entries-min", synth_config.entries_min,
                      "Lower bound of the log-uniform company-size spread")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { entries_min_set = true; });
    synth->add_option("--entries-max", synth_config.entries_max,
                      "Upper bound of the log-uniform company-size spread")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { entries_max_set = true; });
    synth->add_option("--bias", synth_config.base.attachment_bias,
                      "Preferential-attachment strength for account draws")
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--mutation-rate", synth_config.base.pattern_mutation_rate,
                      "Probability an entry perturbs an existing pattern")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--accounts-per-entry-min", synth_config.base.accounts_per_entry_min,
                      "Fewest accounts an entry touches")
        ->check(CLI::PositiveNumber);
    synth->add_option("--accounts-per-entry-max", synth_config.base.accounts_per_entry_max,
                      "Most accounts an entry touches")
        ->check(CLI::PositiveNumber);
    synth->add_option("--industries", synth_industries,
                      "Comma-separated industry codes assigned round-robin");
    synth->add_option("--out", synth_out_dir, "Output directory")->required();

    // ---- cohort ---------------------------------------------------------
    auto* cohort = app.add_subcommand("cohort", "Run the full pipeline over a directory "
                                      "of datasets and aggregate the results");
    std::string cohort_dir, cohort_map, cohort_out;
    std::vector<std::string> cohort_column_map;
    double cohort_significance = 0.1;
    std::size_t cohort_min_tail = 10;
    std::size_t cohort_cap = 100000;
    bool cohort_no_cap = false;
    cohort->add_option("--dir", cohort_dir, "Directory of journal-entry CSVs")->required();
    cohort->add_option("--industry-map", cohort_map,
                       "CSV of company_id,industry_code (default: <dir>/industry_map.csv "
                       "when present)");
    cohort->add_option("--out", cohort_out, "Report output directory")->required();
    cohort->add_option("--column-map", cohort_column_map,
                       "Override a CSV header name (repeatable)");
    cohort->add_option("--significance", cohort_significance, "p-value threshold")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    cohort->add_option("--min-tail", cohort_min_tail, "Smallest usable tail size")
        ->check(CLI::PositiveNumber);
    cohort->add_option("--cap", cohort_cap, "Refuse networks above this node count")
        ->check(CLI::PositiveNumber);
    cohort->add_flag("--no-cap", cohort_no_cap, "Disable the node cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (*build) {
            std::ifstream in(build_input, std::ios::binary);
            if (!in) throw lg::DataError("cannot open input file " + build_input);
            lg::IngestResult parsed = lg::parse_journal_csv(in, ingest_config_from(build_column_map));
            lg::FsnBuildOptions options;
            options.pattern_mode = build_pattern == "undirected" ? lg::PatternMode::Undirected
                                                                 : lg::PatternMode::Directed;
            options.node_cap = build_cap;
            options.no_cap = build_no_cap;
            lg::FinancialStatementsNetwork net = lg::build_network(parsed.entries, options);
            write_output(build_output, lg::network_to_json(net));
            std::cerr << "built network: " << net.bp.size() << " bp, " << net.fa.size()
                      << " fa, " << net.edges.size() << " edges from "
                      << parsed.stats.lines << " lines (" << parsed.stats.unbalanced_entries
                      << " unbalanced entries)\n";
        } else if (*stats) {
            StatsRow row = compute_stats(load_network(stats_network), workers);
            write_output(stats_out, stats_format == "json" ? stats_to_json(row)
                                                           : stats_to_csv(row));
        } else if (*centrality) {
            lg::FinancialStatementsNetwork net = load_network(cent_network);
            lg::BipartiteGraph graph = lg::BipartiteGraph::from_network(net);
            lg::NodeLabels labels = lg::NodeLabels::for_network(net);
            lg::CentralityOptions options;
            options.workers = workers;
            options.normalization = cent_normalization == "paper-literal"
                                        ? lg::NormalizationMode::PaperLiteral
                                        : lg::NormalizationMode::OwnPartition;
            options.betweenness = cent_betweenness == "length-weighted"
                                      ? lg::BetweennessMode::LengthWeighted
                                      : lg::BetweennessMode::GeodesicFraction;
            lg::CentralityReport report;
            if (cent_measure == "degree")
                report = lg::degree_centrality(graph, labels);
            else if (cent_measure == "closeness")
                report = lg::closeness_centrality(graph, labels, options);
            else
                report = lg::betweenness_centrality(graph, labels, options);
            for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
            if (cent_top > 0) {
                lg::CentralityReport trimmed = report;
                trimmed.scores = lg::top_nodes(report, cent_top);
                report = trimmed;
            }
            write_output(cent_out, cent_format == "json" ? lg::report_to_json(report)
                                                         : lg::report_to_csv(report));
        } else if (*fit) {
            lg::FinancialStatementsNetwork net = load_network(fit_network);
            lg::DegreeSequence seq = sequence_for_nodes(net, fit_nodes);
            lg::TailFitOptions options;
            options.significance = fit_significance;
            options.min_tail = fit_min_tail;
            lg::TailFitResult result = lg::likelihood_ratio_test(seq, options);
            write_output(fit_out, lg::fit_to_json(result, seq));
        } else if (*plotdata) {
            lg::FinancialStatementsNetwork net = load_network(plot_network);
            lg::DegreeSequence seq = sequence_for_nodes(net, plot_nodes);
            lg::TailFitOptions options;
            options.significance = plot_significance;
            options.min_tail = plot_min_tail;
            lg::TailFitResult result = lg::likelihood_ratio_test(seq, options);
            write_output(plot_out, lg::curves_to_csv(lg::distribution_curves(seq, result)));
        } else if (*synth) {
            if (!entries_min_set) synth_config.entries_min = synth_entries;
            if (!entries_max_set) synth_config.entries_max = synth_entries;
            synth_config.industries.clear();
            std::stringstream labels(synth_industries);
            std::string label;
            while (std::getline(labels, label, ','))
                if (!label.empty()) synth_config.industries.push_back(label);
            auto files = lg::generate_cohort(synth_config, synth_out_dir);
            std::cerr << "wrote " << files.size() << " datasets to " << synth_out_dir << '\n';
        } else if (*cohort) {
            std::map<std::string, std::string> industry;
            std::filesystem::path map_path = cohort_map;
            if (cohort_map.empty()) {
                std::filesystem::path fallback =
                    std::filesystem::path(cohort_dir) / "industry_map.csv";
                if (std::filesystem::exists(fallback)) map_path = fallback;
            }
            if (!map_path.empty()) industry = lg::load_industry_map(map_path);

            lg::AnalyzeOptions options;
            options.ingest = ingest_config_from(cohort_column_map);
            options.build.node_cap = cohort_cap;
            options.build.no_cap = cohort_no_cap;
            options.tail.significance = cohort_significance;
            options.tail.min_tail = cohort_min_tail;
            options.workers = workers;
            std::vector<lg::CompanyStats> rows =
                lg::analyze_directory(cohort_dir, industry, options);
            lg::CohortSummary summary = lg::summarize_cohort(rows);
            lg::write_cohort_reports(cohort_out, rows, summary);
            std::cerr << "cohort: " << summary.companies_ok << "/" << summary.companies_total
                      << " companies analyzed, reports in " << cohort_out << '\n';
        }
    } catch (const lg::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
