#include "vdpost/format.hpp"

#include <cstdio>

namespace vdpost {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    std::string s(buf);
    // snprintf honours LC_NUMERIC; the files must not
    for (auto& ch : s) {
        if (ch == ',') {
            ch = '.';
        }
    }
    if (s == "-0") {
        s = "0";
    }
    return s;
}

std::string format_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace vdpost
