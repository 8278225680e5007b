#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ledgergraph/date.hpp"
#include "ledgergraph/decimal.hpp"

namespace ledgergraph {

enum class Side : std::uint8_t { Debit, Credit };

// One general-ledger line. entry_id groups lines into journal entries.
struct JournalEntryLine {
    std::string company_id;
    std::string entry_id;
    Date date;
    std::string account_id;
    std::string account_name; // optional, empty when absent
    Decimal amount;           // non-negative
    Side side = Side::Debit;

    friend bool operator==(const JournalEntryLine&, const JournalEntryLine&) = default;
};

// One bookkeeping transaction. Unbalanced entries are kept and flagged:
// live-audit exports carry noise and dropping them would bias the network.
struct JournalEntry {
    std::string entry_id;
    std::vector<JournalEntryLine> lines; // non-empty, file order
    bool balanced = false;               // sum(debit) == sum(credit), exact

    const std::string& company_id() const { return lines.front().company_id; }

    friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

// Column-name mapping and side-token aliases. Real GL exports vary; the
// defaults match the reference CSV layout.
struct IngestConfig {
    std::map<std::string, std::string> columns; // canonical name -> header name
    std::vector<std::string> debit_tokens{"d", "debit"};
    std::vector<std::string> credit_tokens{"c", "credit"};

    static const std::vector<std::string>& canonical_columns();
    std::string header_for(const std::string& canonical) const;
};

struct IngestStats {
    std::size_t lines = 0;
    std::size_t entries = 0;
    std::size_t distinct_accounts = 0;
    std::size_t unbalanced_entries = 0;
};

struct IngestResult {
    std::vector<JournalEntry> entries; // ordered by first appearance of entry_id
    IngestStats stats;
};

// Parses a UTF-8 CSV with a header row into journal entries. Lines are
// grouped by entry_id, preserving file order inside each group. Throws
// ParseError (with line number) on malformed rows and DataError when the
// input holds no records.
IngestResult parse_journal_csv(std::istream& in, const IngestConfig& config = {});

void write_journal_csv(std::ostream& out, std::span<const JournalEntry> entries,
                       const IngestConfig& config = {});

} // namespace ledgergraph
