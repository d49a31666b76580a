// rng.hpp
// Deterministic sampling support. Every sampling operation owns a private
// mt19937_64 seeded per call, so identical seeds give bit-identical runs.

#pragma once

#include <cstdint>
#include <random>

namespace qip {

/// Uniform double in [0, 1): top 53 bits of one 64-bit draw. Fixed here
/// instead of std::uniform_real_distribution, whose output is unspecified
/// across standard libraries.
inline double uniform_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace qip
