#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ledgergraph/graph.hpp"
#include "ledgergraph/journal.hpp"

namespace fixtures {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

inline ledgergraph::BipartiteGraph make_graph(std::uint32_t n_bp, std::uint32_t n_fa,
                                              std::vector<Edge> edges) {
    return ledgergraph::BipartiteGraph(n_bp, n_fa, edges);
}

// U1 - V1 - U2
inline ledgergraph::BipartiteGraph path_u1_v1_u2() {
    return make_graph(2, 1, {{0, 0}, {1, 0}});
}

// 4-cycle U1 - V1 - U2 - V2 - U1
inline ledgergraph::BipartiteGraph cycle4() {
    return make_graph(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

// One BP node connected to k FA nodes.
inline ledgergraph::BipartiteGraph star(std::uint32_t k) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < k; ++i) edges.push_back({0, i});
    return make_graph(1, k, edges);
}

// Alternating path with the given node count, starting at a BP node:
// U1 - V1 - U2 - V2 - ...
inline ledgergraph::BipartiteGraph alternating_path(std::uint32_t nodes) {
    std::uint32_t n_bp = (nodes + 1) / 2;
    std::uint32_t n_fa = nodes / 2;
    std::vector<Edge> edges;
    for (std::uint32_t pos = 0; pos + 1 < nodes; ++pos) {
        if (pos % 2 == 0)
            edges.push_back({pos / 2, pos / 2}); // U_i - V_i
        else
            edges.push_back({pos / 2 + 1, pos / 2}); // V_i - U_{i+1}
    }
    return make_graph(n_bp, n_fa, edges);
}

// Random connected bipartite graph with n_bp + n_fa <= max_nodes. A
// spanning construction guarantees connectivity; extra random edges are
// layered on top.
inline ledgergraph::BipartiteGraph random_connected(std::mt19937_64& rng,
                                                    std::uint32_t max_nodes = 10) {
    std::uniform_int_distribution<std::uint32_t> bp_dist(1, max_nodes - 1);
    std::uint32_t n_bp = bp_dist(rng);
    std::uniform_int_distribution<std::uint32_t> fa_dist(1, max_nodes - n_bp);
    std::uint32_t n_fa = fa_dist(rng);

    std::vector<Edge> edges;
    std::vector<std::uint32_t> placed_bp{0}, placed_fa;
    // First FA node attaches to the first BP node, every later node to a
    // random placed node of the opposite partition.
    for (std::uint32_t f = 0; f < n_fa; ++f) {
        std::uint32_t b = placed_bp[std::uniform_int_distribution<std::size_t>(
            0, placed_bp.size() - 1)(rng)];
        edges.push_back({b, f});
        placed_fa.push_back(f);
        if (placed_bp.size() < n_bp) {
            std::uint32_t nb = static_cast<std::uint32_t>(placed_bp.size());
            std::uint32_t fa = placed_fa[std::uniform_int_distribution<std::size_t>(
                0, placed_fa.size() - 1)(rng)];
            edges.push_back({nb, fa});
            placed_bp.push_back(nb);
        }
    }
    while (placed_bp.size() < n_bp) {
        std::uint32_t nb = static_cast<std::uint32_t>(placed_bp.size());
        std::uint32_t fa = placed_fa[std::uniform_int_distribution<std::size_t>(
            0, placed_fa.size() - 1)(rng)];
        edges.push_back({nb, fa});
        placed_bp.push_back(nb);
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::uint32_t b = 0; b < n_bp; ++b)
        for (std::uint32_t f = 0; f < n_fa; ++f)
            if (coin(rng) < 0.25) edges.push_back({b, f});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return make_graph(n_bp, n_fa, edges);
}

// Twelve journal entries over five accounts forming exactly three distinct
// patterns: sales (receivables/revenue) x6, receipts (cash/receivables) x4,
// cost bookings (cogs/inventory) x2.
inline std::string twelve_entry_csv() {
    std::ostringstream out;
    out << "company_id,entry_id,date,account_id,account_name,amount,side\n";
    auto entry = [&](int i, const char* debit, const char* credit, const char* amount) {
        out << "demo,J" << i << ",2024-03-0" << (i % 9 + 1) << ',' << debit
            << ",," << amount << ",D\n";
        out << "demo,J" << i << ",2024-03-0" << (i % 9 + 1) << ',' << credit
            << ",," << amount << ",C\n";
    };
    for (int i = 1; i <= 6; ++i) entry(i, "receivables", "revenue", "120.50");
    for (int i = 7; i <= 10; ++i) entry(i, "cash", "receivables", "80.00");
    for (int i = 11; i <= 12; ++i) entry(i, "cogs", "inventory", "55.25");
    return out.str();
}

inline std::vector<ledgergraph::JournalEntry> parse_csv_string(const std::string& text) {
    std::istringstream in(text);
    return ledgergraph::parse_journal_csv(in).entries;
}

} // namespace fixtures
