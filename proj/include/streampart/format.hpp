#pragma once

#include <charconv>
#include <string>

namespace streampart {

// Shortest round-trip decimal representation; deterministic across platforms,
// used for all CSV numeric output.
inline std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

}  // namespace streampart
