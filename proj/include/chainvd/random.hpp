#pragma once

#include <cstdint>
#include <random>

namespace chainvd {

// Top 53 bits of the generator output; identical streams on every platform,
// unlike std::uniform_real_distribution.
inline double uniform_double(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(g() % range);
}

} // namespace chainvd
