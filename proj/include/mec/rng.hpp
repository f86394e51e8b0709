#pragma once

#include <cstdint>
#include <random>

namespace mec {

using Rng = std::mt19937_64;

// Named sub-streams derived from one 64-bit seed. The offsets are part of the
// reproducibility contract: changing one changes every trace that uses it.
enum class Stream : std::uint64_t {
    tasks = 0x01,
    channels = 0x02,
    exploration = 0x03,
    replay = 0x04,
    init = 0x05,
    partition = 0x06,
    greedy = 0x07,
};

// splitmix64 finalizer
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream stream, std::uint64_t salt = 0) {
    return mix_seed(mix_seed(seed ^ (static_cast<std::uint64_t>(stream) << 56)) + salt);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t salt = 0) {
    return Rng(stream_seed(seed, stream, salt));
}

}  // namespace mec
