#ifndef COOPEM_FORMAT_HPP
#define COOPEM_FORMAT_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

namespace coopem {

// All tabular/CLI numeric output uses 12 significant digits so downstream
// comparisons are scriptable.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Round through the 12-digit decimal form; JSON serialization of the result
// then prints at most those digits (shortest round-trip).
inline double round_12sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

} // namespace coopem

#endif
