#pragma once

#include <cstdint>
#include <random>

namespace genprob {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent generator for sample `index` of a run seeded with `seed`.
/// Depends only on (seed, index), so results do not depend on how samples
/// are split across threads.
inline Rng stream_for(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t a = splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Uniform double in (0, 1].
inline double uniform_open0(Rng& rng) {
    return 1.0 - std::generate_canonical<double, 64>(rng);
}

}  // namespace genprob
