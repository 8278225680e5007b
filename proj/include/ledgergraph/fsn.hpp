#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ledgergraph/decimal.hpp"
#include "ledgergraph/journal.hpp"

namespace ledgergraph {

// Pattern identity: which accounts an entry debits and credits. Two entries
// with the same account sets but swapped flow direction are distinct
// patterns. Undirected mode collapses both sets into one for sensitivity
// studies.
enum class PatternMode : std::uint8_t { Directed, Undirected };

struct Pattern {
    std::vector<std::string> debit_accounts;  // sorted, unique
    std::vector<std::string> credit_accounts; // sorted, unique

    static Pattern from_entry(const JournalEntry& entry, PatternMode mode);

    friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

struct FaNode {
    std::string id;
    std::string name; // first non-empty account_name seen, may stay empty
};

struct BpNode {
    Pattern pattern;
    std::uint64_t count = 0; // journal entries exhibiting this pattern
};

// Bipartite financial statements network. Node order is canonical (FA by
// account id, BP by pattern) so serialization is byte-deterministic.
struct FinancialStatementsNetwork {
    std::string company_id;
    std::uint64_t entry_count = 0;
    std::uint64_t unbalanced_entries = 0;
    PatternMode pattern_mode = PatternMode::Directed;
    std::vector<FaNode> fa;
    std::vector<BpNode> bp;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // (bp, fa), sorted
    std::vector<Decimal> edge_amounts; // aggregate flow per edge, metadata only
};

struct FsnBuildOptions {
    PatternMode pattern_mode = PatternMode::Directed;
    std::size_t node_cap = 100000; // total nodes; larger networks are refused
    bool no_cap = false;
};

// Converts one company's journal entries into its network. Throws DataError
// on an empty stream, mixed company ids, or a breached node cap.
FinancialStatementsNetwork build_network(std::span<const JournalEntry> entries,
                                         const FsnBuildOptions& options = {});

// Lossless JSON round-trip (schema "fsn/1"). Loading validates schema
// version, index ranges, edge uniqueness, and canonical node order.
std::string network_to_json(const FinancialStatementsNetwork& net);
FinancialStatementsNetwork network_from_json(std::string_view bytes);

} // namespace ledgergraph
