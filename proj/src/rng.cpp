#include "cascade/rng.hpp"

#include <cassert>

namespace cascade {

std::uint64_t Rng::uniform_below(std::uint64_t n) {
    assert(n >= 1);
    if (n == 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return x % n;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden
    // gamma, output is the finalizer of the advanced state.
    std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace cascade
