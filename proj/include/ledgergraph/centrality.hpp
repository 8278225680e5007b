#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ledgergraph/graph.hpp"

namespace ledgergraph {

enum class Measure : std::uint8_t { Degree, Closeness, Betweenness };

// How the bipartite betweenness maximum is assigned to a node. OwnPartition
// computes the constant with n = the node's own partition size (the
// convention of the normalization's source); PaperLiteral applies the
// constants crosswise, which divides by zero on some valid graphs and is
// kept only for comparison runs.
enum class NormalizationMode : std::uint8_t { OwnPartition, PaperLiteral };

// GeodesicFraction is standard betweenness (each pair contributes the
// fraction of its shortest paths through the node). LengthWeighted scores
// each pair as 1/distance for every node lying on any of its geodesics;
// it exists for sensitivity comparisons and is quadratic-per-source, so
// keep it to small networks.
enum class BetweennessMode : std::uint8_t { GeodesicFraction, LengthWeighted };

struct CentralityOptions {
    NormalizationMode normalization = NormalizationMode::OwnPartition;
    BetweennessMode betweenness = BetweennessMode::GeodesicFraction;
    unsigned workers = 0;
};

// Human-readable node labels for reports. FA labels are account ids (the
// canonical FA order is sorted, so label order matches index order); BP
// labels are fixed-width "bp:NNNNNN" so lexicographic ties follow indices.
struct NodeLabels {
    std::vector<std::string> bp_ids;
    std::vector<std::string> fa_ids;
    std::vector<std::string> fa_names; // parallel to fa_ids, may hold empties

    static NodeLabels for_graph(const BipartiteGraph& graph);
    static NodeLabels for_network(const FinancialStatementsNetwork& net);
};

struct NodeScore {
    std::string node_id;
    Partition partition = Partition::BP;
    double raw = 0.0;
    double normalized = 0.0;
    std::string name; // FA account name when known
};

struct CentralityReport {
    Measure measure = Measure::Degree;
    std::vector<NodeScore> scores; // BP nodes first, then FA, in graph order
    // Normalization constants: opposite-partition sizes for degree,
    // closeness numerators for a connected graph, betweenness maxima.
    double bp_constant = 0.0;
    double fa_constant = 0.0;
    bool component_local = false; // closeness used per-component sizes
    std::vector<std::string> warnings;
};

CentralityReport degree_centrality(const BipartiteGraph& graph, const NodeLabels& labels);
CentralityReport closeness_centrality(const BipartiteGraph& graph, const NodeLabels& labels,
                                      const CentralityOptions& options = {});
CentralityReport betweenness_centrality(const BipartiteGraph& graph, const NodeLabels& labels,
                                        const CentralityOptions& options = {});

// Theoretical betweenness maximum for a node in a partition of n nodes
// facing m nodes in the other partition.
double betweenness_normalizer(std::uint64_t n, std::uint64_t m);

// k highest normalized scores; ties broken by ascending node id.
std::vector<NodeScore> top_nodes(const CentralityReport& report, std::size_t k);

std::string report_to_csv(const CentralityReport& report);
std::string report_to_json(const CentralityReport& report);

} // namespace ledgergraph
