#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace tempodia::detail {

// Locale-independent, platform-stable rendering for CSV cells and headers.
inline std::string format_number(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (x == 0.0)
        return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline std::string format_optional(const std::optional<double> &x) {
    return x ? format_number(*x) : std::string();
}

} // namespace tempodia::detail
