#include "ledgergraph/csv.hpp"

#include <istream>
#include <ostream>
#include <string_view>

#include "ledgergraph/errors.hpp"

namespace ledgergraph {

bool CsvReader::next(std::vector<std::string>& fields, std::size_t& line_no) {
    fields.clear();
    std::streambuf* buf = in_.rdbuf();
    int c = buf->sbumpc();
    // Skip a UTF-8 BOM at the very start of the stream.
    if (at_start_ && c == 0xEF) {
        int c2 = buf->sbumpc();
        int c3 = buf->sbumpc();
        if (c2 == 0xBB && c3 == 0xBF) {
            c = buf->sbumpc();
        } else {
            throw ParseError(1, "invalid byte sequence at start of input");
        }
    }
    at_start_ = false;
    if (c == std::streambuf::traits_type::eof()) return false;

    line_no = line_;
    std::string field;
    bool quoted = false;
    std::size_t quote_open_line = 0;
    while (true) {
        if (c == std::streambuf::traits_type::eof()) {
            if (quoted) throw ParseError(quote_open_line, "unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int peek = buf->sgetc();
                if (peek == '"') {
                    buf->sbumpc();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line_;
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
            quote_open_line = line_;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            ++line_;
            fields.push_back(std::move(field));
            return true;
        } else if (ch == '\r') {
            // Swallow a CR that precedes LF; keep a lone CR literal.
            if (buf->sgetc() == '\n') {
                buf->sbumpc();
                ++line_;
                fields.push_back(std::move(field));
                return true;
            }
            field.push_back(ch);
        } else {
            field.push_back(ch);
        }
        c = buf->sbumpc();
    }
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << csv_escape(fields[i]);
    }
    out.put('\n');
}

} // namespace ledgergraph
