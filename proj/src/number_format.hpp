#pragma once

// Text formatting for doubles with exact round-trip guarantees.

#include <charconv>
#include <cstdio>
#include <string>

namespace subopt::detail {

// Shortest decimal text that parses back to the identical double.
inline std::string format_shortest(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Fixed 17 significant digits; also round-trips exactly, used for the
// numeric fields of design files.
inline std::string format_17(double v) {
    char buf[48];
    int n = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, buf + n);
}

} // namespace subopt::detail
