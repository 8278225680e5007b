#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ledgergraph {

// Exact decimal number: units * 10^-scale. Ledger amounts are decimal by
// nature, so balance checks must not go through binary floating point.
// Scale is preserved from the parsed text ("100.00" round-trips as-is);
// comparison and addition are numeric across scales.
class Decimal {
public:
    static constexpr int kMaxScale = 18;

    Decimal() = default;

    // Accepts [+-]digits[.digits]; rejects everything else (including
    // exponents, thousands separators, and stray characters).
    static std::optional<Decimal> parse(std::string_view text);

    static Decimal from_units(std::int64_t units, int scale);

    std::string str() const;
    double to_double() const;

    std::int64_t units() const noexcept { return units_; }
    int scale() const noexcept { return scale_; }
    bool negative() const noexcept { return units_ < 0; }
    bool zero() const noexcept { return units_ == 0; }

    Decimal& operator+=(const Decimal& rhs);
    friend Decimal operator+(Decimal lhs, const Decimal& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend bool operator==(const Decimal& a, const Decimal& b) {
        return compare(a, b) == 0;
    }
    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
        int c = compare(a, b);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    static int compare(const Decimal& a, const Decimal& b);

    std::int64_t units_ = 0;
    std::int32_t scale_ = 0;
};

} // namespace ledgergraph
