#include "ledgergraph/graph.hpp"

#include <algorithm>
#include <atomic>

#include "ledgergraph/errors.hpp"
#include "ledgergraph/parallel.hpp"

namespace ledgergraph {

BipartiteGraph::BipartiteGraph(
    std::uint32_t bp_count, std::uint32_t fa_count,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> bp_fa_edges)
    : bp_count_(bp_count), fa_count_(fa_count) {
    const std::uint32_t n = node_count();
    offsets_.assign(n + 1, 0);
    for (const auto& [b, f] : bp_fa_edges) {
        if (b >= bp_count_ || f >= fa_count_)
            throw DataError("edge endpoint out of partition range");
        ++offsets_[b + 1];
        ++offsets_[bp_count_ + f + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    neighbors_.resize(offsets_[n]);
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [b, f] : bp_fa_edges) {
        neighbors_[cursor[b]++] = bp_count_ + f;
        neighbors_[cursor[bp_count_ + f]++] = b;
    }
}

BipartiteGraph BipartiteGraph::from_network(const FinancialStatementsNetwork& net) {
    return BipartiteGraph(static_cast<std::uint32_t>(net.bp.size()),
                          static_cast<std::uint32_t>(net.fa.size()), net.edges);
}

void bfs_distances(const BipartiteGraph& graph, std::uint32_t source,
                   std::vector<std::uint32_t>& dist, std::vector<std::uint32_t>& queue) {
    const std::uint32_t n = graph.node_count();
    dist.assign(n, kUnreachable);
    queue.clear();
    queue.reserve(n);
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t v = queue[head];
        std::uint32_t d = dist[v] + 1;
        for (std::uint32_t w : graph.neighbors(v)) {
            if (dist[w] == kUnreachable) {
                dist[w] = d;
                queue.push_back(w);
            }
        }
    }
}

std::vector<std::uint32_t> bfs_distances(const BipartiteGraph& graph, std::uint32_t source) {
    std::vector<std::uint32_t> dist, queue;
    bfs_distances(graph, source, dist, queue);
    return dist;
}

Components connected_components(const BipartiteGraph& graph) {
    const std::uint32_t n = graph.node_count();
    Components out;
    out.label.assign(n, kUnreachable);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    for (std::uint32_t root = 0; root < n; ++root) {
        if (out.label[root] != kUnreachable) continue;
        // Visiting roots in ascending id order makes the root the smallest
        // id in its component.
        queue.clear();
        queue.push_back(root);
        out.label[root] = root;
        std::uint32_t size = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint32_t v = queue[head];
            ++size;
            for (std::uint32_t w : graph.neighbors(v)) {
                if (out.label[w] == kUnreachable) {
                    out.label[w] = root;
                    queue.push_back(w);
                }
            }
        }
        out.roots.push_back(root);
        out.sizes.push_back(size);
    }
    return out;
}

std::uint32_t Components::largest_root() const {
    std::uint32_t best = roots.front();
    std::uint32_t best_size = sizes.front();
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (sizes[i] > best_size) {
            best = roots[i];
            best_size = sizes[i];
        }
    }
    return best;
}

DiameterResult diameter(const BipartiteGraph& graph, unsigned workers) {
    if (graph.edge_count() == 0) throw DataError("diameter undefined: graph has no edges");

    Components comps = connected_components(graph);
    std::uint32_t root = comps.largest_root();
    std::vector<std::uint32_t> members;
    for (std::uint32_t v = 0; v < graph.node_count(); ++v)
        if (comps.label[v] == root) members.push_back(v);

    workers = resolve_workers(workers);
    std::vector<std::uint32_t> per_worker_max(workers, 0);
    parallel_blocks(members.size(), workers,
                    [&](std::size_t begin, std::size_t end, unsigned w) {
                        std::vector<std::uint32_t> dist, queue;
                        std::uint32_t local = 0;
                        for (std::size_t i = begin; i < end; ++i) {
                            bfs_distances(graph, members[i], dist, queue);
                            for (std::uint32_t v : members)
                                if (dist[v] != kUnreachable && dist[v] > local) local = dist[v];
                        }
                        per_worker_max[w] = local;
                    });
    std::uint32_t value = 0;
    for (std::uint32_t m : per_worker_max) value = std::max(value, m);

    DiameterResult result;
    result.value = value;
    result.policy = comps.count() == 1 ? DiameterPolicy::WholeGraph
                                       : DiameterPolicy::LargestComponent;
    result.component_size = static_cast<std::uint32_t>(members.size());
    return result;
}

std::vector<std::uint64_t> degree_sequence(const BipartiteGraph& graph, Partition partition) {
    std::vector<std::uint64_t> out;
    if (partition == Partition::BP) {
        out.reserve(graph.bp_count());
        for (std::uint32_t v = 0; v < graph.bp_count(); ++v) out.push_back(graph.degree(v));
    } else {
        out.reserve(graph.fa_count());
        for (std::uint32_t v = graph.bp_count(); v < graph.node_count(); ++v)
            out.push_back(graph.degree(v));
    }
    return out;
}

} // namespace ledgergraph
