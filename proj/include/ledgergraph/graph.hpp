#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ledgergraph/fsn.hpp"

namespace ledgergraph {

enum class Partition : std::uint8_t { BP, FA };

inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

// CSR adjacency over a unified node index: BP nodes occupy [0, bp_count),
// FA nodes [bp_count, bp_count + fa_count). Edges are given as (bp, fa)
// pairs, so the structure is bipartite by construction and symmetric.
class BipartiteGraph {
public:
    BipartiteGraph(std::uint32_t bp_count, std::uint32_t fa_count,
                   std::span<const std::pair<std::uint32_t, std::uint32_t>> bp_fa_edges);

    static BipartiteGraph from_network(const FinancialStatementsNetwork& net);

    std::uint32_t bp_count() const noexcept { return bp_count_; }
    std::uint32_t fa_count() const noexcept { return fa_count_; }
    std::uint32_t node_count() const noexcept { return bp_count_ + fa_count_; }
    std::uint64_t edge_count() const noexcept { return neighbors_.size() / 2; }

    bool is_bp(std::uint32_t node) const noexcept { return node < bp_count_; }
    Partition partition_of(std::uint32_t node) const noexcept {
        return is_bp(node) ? Partition::BP : Partition::FA;
    }

    std::span<const std::uint32_t> neighbors(std::uint32_t node) const {
        return {neighbors_.data() + offsets_[node],
                neighbors_.data() + offsets_[node + 1]};
    }
    std::uint32_t degree(std::uint32_t node) const {
        return static_cast<std::uint32_t>(offsets_[node + 1] - offsets_[node]);
    }

private:
    std::uint32_t bp_count_ = 0;
    std::uint32_t fa_count_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> neighbors_;
};

// Hop distances from source; kUnreachable marks nodes in other components.
// The scratch overload reuses caller-provided storage across sweeps.
std::vector<std::uint32_t> bfs_distances(const BipartiteGraph& graph, std::uint32_t source);
void bfs_distances(const BipartiteGraph& graph, std::uint32_t source,
                   std::vector<std::uint32_t>& dist, std::vector<std::uint32_t>& queue);

struct Components {
    std::vector<std::uint32_t> label; // per node: smallest node id in its component
    std::vector<std::uint32_t> roots; // distinct labels, ascending
    std::vector<std::uint32_t> sizes; // parallel to roots

    // Largest component; ties broken by smallest root for determinism.
    std::uint32_t largest_root() const;
    std::size_t count() const noexcept { return roots.size(); }
};

Components connected_components(const BipartiteGraph& graph);

enum class DiameterPolicy : std::uint8_t { WholeGraph, LargestComponent };

struct DiameterResult {
    std::uint32_t value = 0;
    DiameterPolicy policy = DiameterPolicy::WholeGraph;
    std::uint32_t component_size = 0;
};

// Exact diameter of the largest connected component via a BFS from every
// node of that component. Throws DataError on an edgeless graph.
DiameterResult diameter(const BipartiteGraph& graph, unsigned workers = 0);

std::vector<std::uint64_t> degree_sequence(const BipartiteGraph& graph, Partition partition);

} // namespace ledgergraph
