#include "ledgergraph/centrality.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "ledgergraph/errors.hpp"
#include "ledgergraph/format.hpp"
#include "ledgergraph/parallel.hpp"

namespace ledgergraph {

namespace {

std::string fixed_label(const char* prefix, std::uint32_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s%06u", prefix, index);
    return buf;
}

void require_partitions(const BipartiteGraph& graph) {
    if (graph.bp_count() == 0 || graph.fa_count() == 0)
        throw DataError("centrality undefined: a partition is empty");
}

CentralityReport make_report(Measure measure, const BipartiteGraph& graph,
                             const NodeLabels& labels) {
    CentralityReport report;
    report.measure = measure;
    report.scores.resize(graph.node_count());
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        NodeScore& s = report.scores[v];
        if (graph.is_bp(v)) {
            s.node_id = labels.bp_ids[v];
            s.partition = Partition::BP;
        } else {
            std::uint32_t f = v - graph.bp_count();
            s.node_id = labels.fa_ids[f];
            s.partition = Partition::FA;
            if (f < labels.fa_names.size()) s.name = labels.fa_names[f];
        }
    }
    return report;
}

// Per-component partition sizes, indexed by component root.
struct ComponentSizes {
    std::vector<std::uint32_t> bp; // indexed by node id of the root
    std::vector<std::uint32_t> fa;
};

ComponentSizes component_partition_sizes(const BipartiteGraph& graph, const Components& comps) {
    ComponentSizes sizes;
    sizes.bp.assign(graph.node_count(), 0);
    sizes.fa.assign(graph.node_count(), 0);
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        std::uint32_t root = comps.label[v];
        if (graph.is_bp(v))
            ++sizes.bp[root];
        else
            ++sizes.fa[root];
    }
    return sizes;
}

} // namespace

NodeLabels NodeLabels::for_graph(const BipartiteGraph& graph) {
    NodeLabels labels;
    labels.bp_ids.reserve(graph.bp_count());
    for (std::uint32_t i = 0; i < graph.bp_count(); ++i)
        labels.bp_ids.push_back(fixed_label("bp:", i));
    labels.fa_ids.reserve(graph.fa_count());
    for (std::uint32_t i = 0; i < graph.fa_count(); ++i)
        labels.fa_ids.push_back(fixed_label("fa:", i));
    return labels;
}

NodeLabels NodeLabels::for_network(const FinancialStatementsNetwork& net) {
    NodeLabels labels;
    labels.bp_ids.reserve(net.bp.size());
    for (std::uint32_t i = 0; i < net.bp.size(); ++i)
        labels.bp_ids.push_back(fixed_label("bp:", i));
    labels.fa_ids.reserve(net.fa.size());
    labels.fa_names.reserve(net.fa.size());
    for (const FaNode& node : net.fa) {
        labels.fa_ids.push_back(node.id);
        labels.fa_names.push_back(node.name);
    }
    return labels;
}

CentralityReport degree_centrality(const BipartiteGraph& graph, const NodeLabels& labels) {
    require_partitions(graph);
    CentralityReport report = make_report(Measure::Degree, graph, labels);
    // A node's maximum degree is the size of the opposite partition.
    report.bp_constant = graph.fa_count();
    report.fa_constant = graph.bp_count();
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        double k = graph.degree(v);
        report.scores[v].raw = k;
        report.scores[v].normalized =
            k / (graph.is_bp(v) ? report.bp_constant : report.fa_constant);
    }
    return report;
}

CentralityReport closeness_centrality(const BipartiteGraph& graph, const NodeLabels& labels,
                                      const CentralityOptions& options) {
    require_partitions(graph);
    CentralityReport report = make_report(Measure::Closeness, graph, labels);
    report.bp_constant = graph.fa_count() + 2.0 * (graph.bp_count() - 1);
    report.fa_constant = graph.bp_count() + 2.0 * (graph.fa_count() - 1);

    Components comps = connected_components(graph);
    report.component_local = comps.count() > 1;
    ComponentSizes sizes = component_partition_sizes(graph, comps);

    if (graph.edge_count() == 0) {
        report.warnings.push_back("graph has no edges; closeness is zero everywhere");
        return report;
    }
    if (report.component_local)
        report.warnings.push_back(
            "graph is disconnected; farness and numerators use per-component partition sizes");

    const std::uint32_t n = graph.node_count();
    std::vector<double> farness(n, 0.0);
    parallel_blocks(n, options.workers, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<std::uint32_t> dist, queue;
        for (std::size_t v = begin; v < end; ++v) {
            if (graph.degree(static_cast<std::uint32_t>(v)) == 0) continue;
            bfs_distances(graph, static_cast<std::uint32_t>(v), dist, queue);
            double sum = 0.0;
            for (std::uint32_t w = 0; w < n; ++w)
                if (dist[w] != kUnreachable) sum += dist[w];
            farness[v] = sum;
        }
    });

    for (std::uint32_t v = 0; v < n; ++v) {
        NodeScore& s = report.scores[v];
        if (farness[v] <= 0.0) {
            s.raw = 0.0;
            s.normalized = 0.0;
            continue;
        }
        std::uint32_t root = comps.label[v];
        double bp_local = sizes.bp[root];
        double fa_local = sizes.fa[root];
        // Theoretical minimum farness: direct hops to the opposite
        // partition, two hops to the rest of the node's own partition.
        double numerator = graph.is_bp(v) ? fa_local + 2.0 * (bp_local - 1)
                                          : bp_local + 2.0 * (fa_local - 1);
        s.raw = 1.0 / farness[v];
        s.normalized = numerator / farness[v];
    }
    return report;
}

double betweenness_normalizer(std::uint64_t n, std::uint64_t m) {
    // Maximum achievable betweenness for a node whose partition holds n
    // nodes and whose opposite partition holds m. s and t are the quotient
    // and remainder of (n - 1) / m.
    using i128 = __int128;
    if (n == 0 || m == 0) return 0.0;
    i128 s = static_cast<i128>((n - 1) / m);
    i128 t = static_cast<i128>((n - 1) % m);
    i128 M = static_cast<i128>(m);
    i128 bracket = M * M * (s + 1) * (s + 1) + M * (s + 1) * (2 * t - s - 1) -
                   t * (2 * s - t + 3);
    return static_cast<double>(bracket) / 2.0;
}

namespace {

// Geodesic-counting accumulation: one BFS per source; dependencies pushed
// back along the shortest-path DAG in reverse visit order. Sources are
// statically partitioned across workers and the per-worker accumulators are
// merged in worker order, so results do not depend on scheduling.
std::vector<double> raw_betweenness_geodesic(const BipartiteGraph& graph, unsigned workers) {
    const std::uint32_t n = graph.node_count();
    workers = resolve_workers(workers);
    if (static_cast<std::size_t>(workers) > n) workers = n;
    std::vector<std::vector<double>> partial(workers);

    parallel_blocks(n, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        std::vector<double>& acc = partial[w];
        acc.assign(n, 0.0);
        std::vector<std::uint32_t> dist(n), order;
        std::vector<double> sigma(n), delta(n);
        order.reserve(n);
        for (std::size_t src = begin; src < end; ++src) {
            const std::uint32_t s = static_cast<std::uint32_t>(src);
            if (graph.degree(s) == 0) continue;
            std::fill(dist.begin(), dist.end(), kUnreachable);
            order.clear();
            dist[s] = 0;
            sigma[s] = 1.0;
            order.push_back(s);
            for (std::size_t head = 0; head < order.size(); ++head) {
                std::uint32_t v = order[head];
                std::uint32_t d = dist[v] + 1;
                for (std::uint32_t u : graph.neighbors(v)) {
                    if (dist[u] == kUnreachable) {
                        dist[u] = d;
                        sigma[u] = 0.0;
                        order.push_back(u);
                    }
                    if (dist[u] == d) sigma[u] += sigma[v];
                }
            }
            for (std::size_t i = order.size(); i-- > 0;) delta[order[i]] = 0.0;
            for (std::size_t i = order.size(); i-- > 0;) {
                std::uint32_t v = order[i];
                std::uint32_t d = dist[v];
                for (std::uint32_t u : graph.neighbors(v)) {
                    if (dist[u] + 1 == d) delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v]);
                }
                if (v != s) acc[v] += delta[v];
            }
        }
    });

    std::vector<double> raw(n, 0.0);
    for (const std::vector<double>& acc : partial) {
        if (acc.empty()) continue;
        for (std::uint32_t v = 0; v < n; ++v) raw[v] += acc[v];
    }
    // Each unordered pair was counted from both endpoints.
    for (double& x : raw) x /= 2.0;
    return raw;
}

// Literal variant: every node lying on any geodesic of a pair scores
// 1/distance for that pair (indicator over the DAG, not a path fraction).
std::vector<double> raw_betweenness_length_weighted(const BipartiteGraph& graph,
                                                    unsigned workers) {
    const std::uint32_t n = graph.node_count();
    workers = resolve_workers(workers);
    if (static_cast<std::size_t>(workers) > n) workers = n;
    std::vector<std::vector<double>> partial(workers);

    parallel_blocks(n, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        std::vector<double>& acc = partial[w];
        acc.assign(n, 0.0);
        std::vector<std::uint32_t> dist, queue, stack, epoch_mark(n, 0);
        std::uint32_t epoch = 0;
        for (std::size_t src = begin; src < end; ++src) {
            const std::uint32_t s = static_cast<std::uint32_t>(src);
            if (graph.degree(s) == 0) continue;
            bfs_distances(graph, s, dist, queue);
            for (std::uint32_t t = 0; t < n; ++t) {
                if (t == s || dist[t] == kUnreachable || dist[t] < 2) continue;
                ++epoch;
                double share = 1.0 / dist[t];
                stack.assign(1, t);
                epoch_mark[t] = epoch;
                while (!stack.empty()) {
                    std::uint32_t v = stack.back();
                    stack.pop_back();
                    if (v != t && v != s) acc[v] += share;
                    for (std::uint32_t u : graph.neighbors(v)) {
                        if (dist[u] + 1 == dist[v] && epoch_mark[u] != epoch) {
                            epoch_mark[u] = epoch;
                            stack.push_back(u);
                        }
                    }
                }
            }
        }
    });

    std::vector<double> raw(n, 0.0);
    for (const std::vector<double>& acc : partial) {
        if (acc.empty()) continue;
        for (std::uint32_t v = 0; v < n; ++v) raw[v] += acc[v];
    }
    for (double& x : raw) x /= 2.0;
    return raw;
}

} // namespace

CentralityReport betweenness_centrality(const BipartiteGraph& graph, const NodeLabels& labels,
                                        const CentralityOptions& options) {
    require_partitions(graph);
    CentralityReport report = make_report(Measure::Betweenness, graph, labels);

    std::vector<double> raw = options.betweenness == BetweennessMode::GeodesicFraction
                                  ? raw_betweenness_geodesic(graph, options.workers)
                                  : raw_betweenness_length_weighted(graph, options.workers);

    const double b_bp_sized = betweenness_normalizer(graph.bp_count(), graph.fa_count());
    const double b_fa_sized = betweenness_normalizer(graph.fa_count(), graph.bp_count());
    double bp_constant, fa_constant;
    if (options.normalization == NormalizationMode::OwnPartition) {
        bp_constant = b_bp_sized;
        fa_constant = b_fa_sized;
    } else {
        bp_constant = b_fa_sized;
        fa_constant = b_bp_sized;
        if (bp_constant == 0.0 || fa_constant == 0.0)
            report.warnings.push_back(
                "paper-literal normalization constant is zero for a partition; affected "
                "scores are reported as inf/0");
    }
    report.bp_constant = bp_constant;
    report.fa_constant = fa_constant;

    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        NodeScore& s = report.scores[v];
        s.raw = raw[v];
        double c = graph.is_bp(v) ? bp_constant : fa_constant;
        if (c == 0.0) {
            // A zero own-partition maximum implies no geodesic can pass
            // through these nodes, so the raw score is zero as well.
            s.normalized = raw[v] == 0.0 ? 0.0 : raw[v] / c;
        } else {
            s.normalized = raw[v] / c;
        }
    }
    return report;
}

std::vector<NodeScore> top_nodes(const CentralityReport& report, std::size_t k) {
    std::vector<NodeScore> sorted = report.scores;
    std::sort(sorted.begin(), sorted.end(), [](const NodeScore& a, const NodeScore& b) {
        if (a.normalized != b.normalized) return a.normalized > b.normalized;
        return a.node_id < b.node_id;
    });
    if (k < sorted.size()) sorted.resize(k);
    return sorted;
}

std::string report_to_csv(const CentralityReport& report) {
    std::string out = "node_id,partition,raw,normalized\n";
    for (const NodeScore& s : report.scores) {
        out += s.node_id;
        out += s.partition == Partition::BP ? ",bp," : ",fa,";
        out += format_double(s.raw);
        out += ',';
        out += format_double(s.normalized);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const CentralityReport& report) {
    nlohmann::json j;
    j["measure"] = report.measure == Measure::Degree      ? "degree"
                   : report.measure == Measure::Closeness ? "closeness"
                                                          : "betweenness";
    j["bp_constant"] = report.bp_constant;
    j["fa_constant"] = report.fa_constant;
    j["component_local"] = report.component_local;
    j["warnings"] = report.warnings;
    nlohmann::json scores = nlohmann::json::array();
    for (const NodeScore& s : report.scores) {
        nlohmann::json item{{"node_id", s.node_id},
                            {"partition", s.partition == Partition::BP ? "bp" : "fa"},
                            {"raw", s.raw},
                            {"normalized", s.normalized}};
        if (!s.name.empty()) item["name"] = s.name;
        scores.push_back(std::move(item));
    }
    j["scores"] = std::move(scores);
    return j.dump();
}

} // namespace ledgergraph
