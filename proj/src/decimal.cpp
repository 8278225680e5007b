#include "ledgergraph/decimal.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace ledgergraph {

namespace {

using i128 = __int128;

i128 pow10_128(int n) {
    i128 p = 1;
    for (int i = 0; i < n; ++i) p *= 10;
    return p;
}

constexpr std::int64_t kInt64Max = INT64_MAX;

} // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    i128 units = 0;
    int digits = 0;
    int scale = -1; // -1 until the decimal point is seen
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (scale >= 0) return std::nullopt; // second point
            scale = 0;
            continue;
        }
        if (c < '0' || c > '9') return std::nullopt;
        units = units * 10 + (c - '0');
        ++digits;
        if (scale >= 0) ++scale;
        if (digits > 19) return std::nullopt; // cannot fit int64
    }
    if (digits == 0) return std::nullopt;
    if (scale < 0) scale = 0;
    if (scale > kMaxScale) return std::nullopt;
    if (negative) units = -units;
    if (units > kInt64Max || units < -static_cast<i128>(kInt64Max) - 1) return std::nullopt;

    Decimal d;
    d.units_ = static_cast<std::int64_t>(units);
    d.scale_ = scale;
    return d;
}

Decimal Decimal::from_units(std::int64_t units, int scale) {
    if (scale < 0 || scale > kMaxScale) throw std::invalid_argument("decimal scale out of range");
    Decimal d;
    d.units_ = units;
    d.scale_ = scale;
    return d;
}

std::string Decimal::str() const {
    std::int64_t u = units_;
    bool neg = u < 0;
    unsigned long long mag = neg ? 0ULL - static_cast<unsigned long long>(u)
                                 : static_cast<unsigned long long>(u);
    std::string digits = std::to_string(mag);
    if (scale_ == 0) return neg ? "-" + digits : digits;
    if (static_cast<int>(digits.size()) <= scale_)
        digits.insert(0, static_cast<std::size_t>(scale_) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), 1, '.');
    return neg ? "-" + digits : digits;
}

double Decimal::to_double() const {
    double v = static_cast<double>(units_);
    for (int i = 0; i < scale_; ++i) v /= 10.0;
    return v;
}

Decimal& Decimal::operator+=(const Decimal& rhs) {
    int scale = scale_ > rhs.scale_ ? scale_ : rhs.scale_;
    i128 a = static_cast<i128>(units_) * pow10_128(scale - scale_);
    i128 b = static_cast<i128>(rhs.units_) * pow10_128(scale - rhs.scale_);
    i128 sum = a + b;
    if (sum > kInt64Max || sum < -static_cast<i128>(kInt64Max) - 1)
        throw std::overflow_error("decimal addition overflow");
    units_ = static_cast<std::int64_t>(sum);
    scale_ = scale;
    return *this;
}

int Decimal::compare(const Decimal& a, const Decimal& b) {
    int scale = a.scale_ > b.scale_ ? a.scale_ : b.scale_;
    i128 x = static_cast<i128>(a.units_) * pow10_128(scale - a.scale_);
    i128 y = static_cast<i128>(b.units_) * pow10_128(scale - b.scale_);
    return x < y ? -1 : x > y ? 1 : 0;
}

} // namespace ledgergraph
