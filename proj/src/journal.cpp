#include "ledgergraph/journal.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "ledgergraph/csv.hpp"
#include "ledgergraph/errors.hpp"

namespace ledgergraph {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool matches_token(std::string_view value, const std::vector<std::string>& tokens) {
    std::string v = lower(value);
    return std::any_of(tokens.begin(), tokens.end(),
                       [&](const std::string& t) { return lower(t) == v; });
}

} // namespace

const std::vector<std::string>& IngestConfig::canonical_columns() {
    static const std::vector<std::string> names = {
        "company_id", "entry_id", "date", "account_id", "account_name", "amount", "side"};
    return names;
}

std::string IngestConfig::header_for(const std::string& canonical) const {
    auto it = columns.find(canonical);
    return it != columns.end() ? it->second : canonical;
}

IngestResult parse_journal_csv(std::istream& in, const IngestConfig& config) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    std::size_t line_no = 0;

    if (!reader.next(fields, line_no)) throw DataError("no records: input is empty");

    // Resolve header positions. account_name is optional, everything else
    // must be present exactly once.
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string name = lower(fields[i]);
        if (position.count(name))
            throw ParseError(line_no, "duplicate column '" + fields[i] + "' in header");
        position[name] = i;
    }
    std::unordered_map<std::string, std::size_t> col; // canonical -> index
    for (const auto& canonical : IngestConfig::canonical_columns()) {
        std::string header = lower(config.header_for(canonical));
        auto it = position.find(header);
        if (it == position.end()) {
            if (canonical == "account_name") continue;
            throw ParseError(line_no, "missing required column '" + header + "'");
        }
        col[canonical] = it->second;
    }

    IngestResult result;
    std::unordered_map<std::string, std::size_t> entry_index;
    std::unordered_set<std::string> accounts;

    while (reader.next(fields, line_no)) {
        if (fields.size() == 1 && fields[0].empty()) continue; // trailing blank line
        if (fields.size() != position.size())
            throw ParseError(line_no, "expected " + std::to_string(position.size()) +
                                          " columns, got " + std::to_string(fields.size()));

        JournalEntryLine line;
        line.company_id = fields[col["company_id"]];
        line.entry_id = fields[col["entry_id"]];
        if (line.entry_id.empty()) throw ParseError(line_no, "empty entry_id");
        line.account_id = fields[col["account_id"]];
        if (line.account_id.empty()) throw ParseError(line_no, "empty account_id");
        if (auto it = col.find("account_name"); it != col.end())
            line.account_name = fields[it->second];

        const std::string& date_text = fields[col["date"]];
        auto date = Date::parse(date_text);
        if (!date) throw ParseError(line_no, "invalid date '" + date_text + "'");
        line.date = *date;

        const std::string& amount_text = fields[col["amount"]];
        auto amount = Decimal::parse(amount_text);
        if (!amount) throw ParseError(line_no, "invalid amount '" + amount_text + "'");
        if (amount->negative())
            throw ParseError(line_no, "negative amount '" + amount_text + "'");
        line.amount = *amount;

        const std::string& side_text = fields[col["side"]];
        if (matches_token(side_text, config.debit_tokens)) {
            line.side = Side::Debit;
        } else if (matches_token(side_text, config.credit_tokens)) {
            line.side = Side::Credit;
        } else {
            throw ParseError(line_no, "unknown side token '" + side_text + "'");
        }

        accounts.insert(line.account_id);
        ++result.stats.lines;

        auto [it, inserted] = entry_index.try_emplace(line.entry_id, result.entries.size());
        if (inserted) {
            JournalEntry entry;
            entry.entry_id = line.entry_id;
            result.entries.push_back(std::move(entry));
        }
        JournalEntry& entry = result.entries[it->second];
        if (!entry.lines.empty() && entry.lines.front().company_id != line.company_id)
            throw ParseError(line_no, "entry '" + line.entry_id +
                                          "' spans multiple company ids");
        entry.lines.push_back(std::move(line));
    }

    if (result.entries.empty()) throw DataError("no records: input has a header but no rows");

    for (JournalEntry& entry : result.entries) {
        Decimal debit, credit;
        for (const JournalEntryLine& l : entry.lines)
            (l.side == Side::Debit ? debit : credit) += l.amount;
        entry.balanced = debit == credit;
        if (!entry.balanced) ++result.stats.unbalanced_entries;
    }
    result.stats.entries = result.entries.size();
    result.stats.distinct_accounts = accounts.size();
    return result;
}

void write_journal_csv(std::ostream& out, std::span<const JournalEntry> entries,
                       const IngestConfig& config) {
    std::vector<std::string> row;
    for (const auto& canonical : IngestConfig::canonical_columns())
        row.push_back(config.header_for(canonical));
    write_csv_row(out, row);
    for (const JournalEntry& entry : entries) {
        for (const JournalEntryLine& line : entry.lines) {
            row = {line.company_id, line.entry_id,    line.date.str(),
                   line.account_id, line.account_name, line.amount.str(),
                   line.side == Side::Debit ? "D" : "C"};
            write_csv_row(out, row);
        }
    }
}

} // namespace ledgergraph
