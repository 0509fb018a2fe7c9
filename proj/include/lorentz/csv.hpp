#pragma once
// Fixed number formatting for tabular output: 17 significant digits, so
// doubles round-trip and identical runs give identical bytes.

#include <cstdio>
#include <string>

namespace lorentz {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace lorentz
