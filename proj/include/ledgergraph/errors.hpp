#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ledgergraph {

// Malformed or inconsistent input data. Maps to exit code 2 at the CLI.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure tied to a 1-based line number in the source file.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& message)
        : DataError("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace ledgergraph
