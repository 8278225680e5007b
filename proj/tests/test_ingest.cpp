#include <doctest.h>

#include <sstream>

#include "ledgergraph/csv.hpp"
#include "ledgergraph/decimal.hpp"
#include "ledgergraph/errors.hpp"
#include "ledgergraph/journal.hpp"
#include "support/fixtures.hpp"

using namespace ledgergraph;

TEST_SUITE("decimal") {
    TEST_CASE("parses and round-trips text") {
        auto d = Decimal::parse("100.00");
        REQUIRE(d.has_value());
        CHECK(d->str() == "100.00");
        CHECK(d->units() == 10000);
        CHECK(d->scale() == 2);
        CHECK(Decimal::parse("0.5")->str() == "0.5");
        CHECK(Decimal::parse("-3.25")->str() == "-3.25");
        CHECK(Decimal::parse("7")->str() == "7");
        CHECK(Decimal::parse(".5")->str() == "0.5");
    }

    TEST_CASE("rejects malformed text") {
        CHECK_FALSE(Decimal::parse("12.5O").has_value());
        CHECK_FALSE(Decimal::parse("").has_value());
        CHECK_FALSE(Decimal::parse("1.2.3").has_value());
        CHECK_FALSE(Decimal::parse("1e5").has_value());
        CHECK_FALSE(Decimal::parse("1,000").has_value());
        CHECK_FALSE(Decimal::parse("-").has_value());
    }

    TEST_CASE("comparison and addition are numeric across scales") {
        CHECK(*Decimal::parse("100.00") == *Decimal::parse("100"));
        CHECK(*Decimal::parse("0.1") < *Decimal::parse("0.25"));
        Decimal sum = *Decimal::parse("0.1") + *Decimal::parse("0.02");
        CHECK(sum == *Decimal::parse("0.12"));
        CHECK(sum.str() == "0.12");
        // Exactness where binary floating point fails: 0.1 + 0.2 == 0.3.
        CHECK(*Decimal::parse("0.1") + *Decimal::parse("0.2") == *Decimal::parse("0.3"));
    }
}

TEST_SUITE("csv") {
    TEST_CASE("quoted fields, escaped quotes and embedded newlines") {
        std::istringstream in("a,\"b,1\",\"say \"\"hi\"\"\"\n\"multi\nline\",x,y\n");
        CsvReader reader(in);
        std::vector<std::string> fields;
        std::size_t line = 0;
        REQUIRE(reader.next(fields, line));
        CHECK(fields == std::vector<std::string>{"a", "b,1", "say \"hi\""});
        CHECK(line == 1);
        REQUIRE(reader.next(fields, line));
        CHECK(fields == std::vector<std::string>{"multi\nline", "x", "y"});
        CHECK_FALSE(reader.next(fields, line));
    }

    TEST_CASE("escape round-trip") {
        std::vector<std::string> row = {"plain", "with,comma", "with \"quote\"", "nl\nhere"};
        std::ostringstream out;
        write_csv_row(out, row);
        std::istringstream in(out.str());
        CsvReader reader(in);
        std::vector<std::string> back;
        std::size_t line = 0;
        REQUIRE(reader.next(back, line));
        CHECK(back == row);
    }

    TEST_CASE("unterminated quote reports the opening line") {
        std::istringstream in("a,b\n\"oops,x\n");
        CsvReader reader(in);
        std::vector<std::string> fields;
        std::size_t line = 0;
        REQUIRE(reader.next(fields, line));
        CHECK_THROWS_AS(reader.next(fields, line), ParseError);
    }
}

namespace {

const char* kTinyCsv =
    "company_id,entry_id,date,account_id,account_name,amount,side\n"
    "acme,J1,2024-01-02,cash,Cash,100.00,D\n"
    "acme,J1,2024-01-02,revenue,Revenue,100.00,C\n"
    "acme,J2,2024-01-03,cash,Cash,30.00,D\n";

IngestResult parse_text(const std::string& text, const IngestConfig& config = {}) {
    std::istringstream in(text);
    return parse_journal_csv(in, config);
}

} // namespace

TEST_SUITE("ingest") {
    TEST_CASE("groups lines by entry id and counts stats") {
        IngestResult result = parse_text(kTinyCsv);
        REQUIRE(result.entries.size() == 2);
        CHECK(result.stats.lines == 3);
        CHECK(result.stats.entries == 2);
        CHECK(result.stats.distinct_accounts == 2);
        CHECK(result.entries[0].entry_id == "J1");
        CHECK(result.entries[0].lines.size() == 2);
        CHECK(result.entries[1].entry_id == "J2");
        CHECK(result.entries[1].lines.size() == 1);
    }

    TEST_CASE("grouping is a partition of the input lines") {
        IngestResult result = parse_text(fixtures::twelve_entry_csv());
        std::size_t total = 0;
        for (const auto& entry : result.entries) total += entry.lines.size();
        CHECK(total == result.stats.lines);
        CHECK(total == 24);
    }

    TEST_CASE("grouping handles interleaved entries") {
        IngestResult result = parse_text(
            "company_id,entry_id,date,account_id,account_name,amount,side\n"
            "acme,J1,2024-01-02,a,,1,D\n"
            "acme,J2,2024-01-02,b,,2,D\n"
            "acme,J1,2024-01-02,c,,1,C\n"
            "acme,J2,2024-01-02,d,,2,C\n");
        REQUIRE(result.entries.size() == 2);
        CHECK(result.entries[0].lines[0].account_id == "a");
        CHECK(result.entries[0].lines[1].account_id == "c");
        CHECK(result.entries[1].lines[0].account_id == "b");
        CHECK(result.entries[1].lines[1].account_id == "d");
    }

    TEST_CASE("balance flag is exact") {
        IngestResult result = parse_text(
            "company_id,entry_id,date,account_id,account_name,amount,side\n"
            "acme,J1,2024-01-02,a,,100,D\n"
            "acme,J1,2024-01-02,b,,100.00,C\n"
            "acme,J2,2024-01-02,a,,100,D\n"
            "acme,J2,2024-01-02,b,,90,C\n");
        REQUIRE(result.entries.size() == 2);
        CHECK(result.entries[0].balanced);
        CHECK_FALSE(result.entries[1].balanced);
        CHECK(result.stats.unbalanced_entries == 1);
    }

    TEST_CASE("malformed rows carry line numbers") {
        std::string bad_amount =
            "company_id,entry_id,date,account_id,account_name,amount,side\n"
            "acme,J1,2024-01-02,cash,Cash,12.5O,D\n";
        try {
            parse_text(bad_amount);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("12.5O") != std::string::npos);
        }

        CHECK_THROWS_AS(parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"
                                   "acme,J1,2024-13-40,cash,Cash,1,D\n"),
                        ParseError); // impossible date
        CHECK_THROWS_AS(parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"
                                   "acme,J1,2024-01-02,cash,Cash,1,X\n"),
                        ParseError); // unknown side token
        CHECK_THROWS_AS(parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"
                                   "acme,J1,2024-01-02,cash,Cash,1\n"),
                        ParseError); // wrong column count
        CHECK_THROWS_AS(parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"
                                   "acme,J1,2024-01-02,cash,Cash,-5,D\n"),
                        ParseError); // negative amount
        CHECK_THROWS_AS(parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"
                                   "acme,,2024-01-02,cash,Cash,1,D\n"),
                        ParseError); // empty entry id
    }

    TEST_CASE("empty input raises a no-records error") {
        CHECK_THROWS_AS(parse_text(""), DataError);
        CHECK_THROWS_AS(
            parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"),
            DataError);
    }

    TEST_CASE("side tokens are case-insensitive with configurable aliases") {
        IngestConfig config;
        config.debit_tokens.push_back("soll");
        IngestResult result = parse_text(
            "company_id,entry_id,date,account_id,account_name,amount,side\n"
            "acme,J1,2024-01-02,a,,1,DEBIT\n"
            "acme,J1,2024-01-02,b,,1,c\n"
            "acme,J1,2024-01-02,c,,1,Soll\n",
            config);
        CHECK(result.entries[0].lines[0].side == Side::Debit);
        CHECK(result.entries[0].lines[1].side == Side::Credit);
        CHECK(result.entries[0].lines[2].side == Side::Debit);
    }

    TEST_CASE("column mapping renames headers") {
        IngestConfig config;
        config.columns["entry_id"] = "doc_no";
        config.columns["amount"] = "value";
        IngestResult result = parse_text(
            "company_id,doc_no,date,account_id,account_name,value,side\n"
            "acme,J9,2024-01-02,a,,42.10,D\n",
            config);
        CHECK(result.entries[0].entry_id == "J9");
        CHECK(result.entries[0].lines[0].amount.str() == "42.10");
    }

    TEST_CASE("round-trip: write then re-parse yields identical records") {
        IngestResult first = parse_text(fixtures::twelve_entry_csv());
        std::ostringstream out;
        write_journal_csv(out, first.entries);
        IngestResult second = parse_text(out.str());
        CHECK(first.entries == second.entries);
        CHECK(second.stats.lines == first.stats.lines);
    }

    TEST_CASE("parsing is independent of stream chunking") {
        // Same bytes through differently buffered streams.
        std::string text = fixtures::twelve_entry_csv();
        IngestResult a = parse_text(text);

        std::istringstream raw(text);
        struct OneByteBuf : std::streambuf {
            explicit OneByteBuf(std::string data) : data_(std::move(data)) {
                setg(data_.data(), data_.data(), data_.data());
            }
            int_type underflow() override {
                if (pos_ >= data_.size()) return traits_type::eof();
                setg(data_.data() + pos_, data_.data() + pos_, data_.data() + pos_ + 1);
                ++pos_;
                return traits_type::to_int_type(*gptr());
            }
            std::string data_;
            std::size_t pos_ = 0;
        } buf(text);
        std::istream trickle(&buf);
        IngestResult b = parse_journal_csv(trickle);
        CHECK(a.entries == b.entries);
    }

    TEST_CASE("mixed company ids within one entry are rejected") {
        CHECK_THROWS_AS(parse_text("company_id,entry_id,date,account_id,account_name,amount,side\n"
                                   "acme,J1,2024-01-02,a,,1,D\n"
                                   "other,J1,2024-01-02,b,,1,C\n"),
                        ParseError);
    }
}
