#pragma once

#include <cstdio>
#include <string>

namespace sirnet {

// shortest round-trippable-ish decimal for output tables; %.12g keeps CSV
// files byte-stable across platforms for the values we emit
inline std::string fmt_g(double x, int precision = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
    return buf;
}

} // namespace sirnet
