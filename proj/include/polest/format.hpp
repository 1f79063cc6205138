#ifndef POLEST_FORMAT_HPP
#define POLEST_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace polest {

/// Shortest decimal string that parses back to exactly v; "inf", "-inf", "nan" otherwise.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

} // namespace polest

#endif
