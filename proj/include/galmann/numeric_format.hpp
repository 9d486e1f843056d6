#pragma once

#include <cstdio>
#include <string>

namespace galmann {

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Scientific notation with 6 significant digits, for residual reporting.
inline std::string format_sci6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

}  // namespace galmann
