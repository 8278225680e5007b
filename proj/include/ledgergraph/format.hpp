#pragma once

#include <string>

namespace ledgergraph {

// Shortest round-trippable decimal text for a double; used everywhere a
// score lands in CSV/JSON so identical runs emit identical bytes.
std::string format_double(double value);

} // namespace ledgergraph
