#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ledgergraph {

// Incremental RFC 4180 reader: quoted fields, escaped quotes, embedded
// newlines, CR/LF or LF line endings. Reads the underlying stream one
// character at a time, so results cannot depend on buffer chunking.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Fetches the next record. Returns false on clean end of input.
    // line_no receives the 1-based line on which the record starts.
    // Throws ParseError on an unterminated quoted field.
    bool next(std::vector<std::string>& fields, std::size_t& line_no);

private:
    std::istream& in_;
    std::size_t line_ = 1;
    bool at_start_ = true;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

} // namespace ledgergraph
