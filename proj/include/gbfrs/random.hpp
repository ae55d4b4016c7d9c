#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace gbfrs {

using Rng = std::mt19937_64;

/// Mixes a master seed with stream identifiers into an independent 64-bit seed
/// (splitmix64 finalizer applied per component).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master);
    for (auto p : parts) h = mix(h ^ mix(p));
    return h;
}

/// Stable FNV-1a hash for turning names into stream identifiers.
inline std::uint64_t stream_id(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace gbfrs
