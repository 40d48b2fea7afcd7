#pragma once

#include <cstdint>

namespace lfbo::driver {

/// SplitMix64 finalizer; mixes a base seed with stream and index tags so
/// each consumer in a run draws from an independent stream.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

namespace stream {
inline constexpr std::uint64_t kInit = 1;
inline constexpr std::uint64_t kNoise = 2;
inline constexpr std::uint64_t kModel = 3;
inline constexpr std::uint64_t kCandidates = 4;
inline constexpr std::uint64_t kEpsilon = 5;
inline constexpr std::uint64_t kData = 6;
}  // namespace stream

}  // namespace lfbo::driver
