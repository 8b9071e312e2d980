#pragma once

#include <cstdint>
#include <random>

namespace lifecd {

/// Identifier recorded in result metadata so outputs can be reproduced
/// bit-for-bit: per-stream seeds come from splitmix64, draws from a
/// std::mt19937_64 seeded with them, and uniforms from the top 53 bits.
inline constexpr const char* kGeneratorId = "splitmix64-mt19937_64";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic per-stream seed derivation from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

/// Uniform double in [0,1) from the top 53 bits of one 64-bit draw.
/// std::uniform_real_distribution is implementation-defined; this is not.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace lifecd
