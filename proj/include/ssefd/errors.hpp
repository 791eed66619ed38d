#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ssefd {

// Scientific-notation formatting for diagnostics (std::to_string flattens
// small values to 0.000000).
inline std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// Bad or inconsistent run configuration (schema violations, invalid presets).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: singular parameters, lost accuracy, stiffness, missing
// roots. The message names the specific condition.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ssefd
