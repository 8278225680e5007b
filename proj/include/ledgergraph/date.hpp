#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ledgergraph {

// Calendar date, ISO-8601 (YYYY-MM-DD) on the wire.
struct Date {
    std::int32_t year = 1970;
    std::uint8_t month = 1;
    std::uint8_t day = 1;

    static std::optional<Date> parse(std::string_view text);
    std::string str() const;

    // Days since an arbitrary fixed epoch; used to step dates forward.
    Date plus_days(int days) const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

} // namespace ledgergraph
