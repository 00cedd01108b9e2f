#pragma once

// Seedable, reproducible random number generation. The engine is the
// standard-specified MT19937-64, so the raw 64-bit stream is identical on
// every conforming platform. Distribution transforms (uniform doubles,
// bounded integers, exponentials) are implemented here by inverse transform
// instead of <random>'s distribution classes, whose output is
// implementation-defined.

#include <cstdint>
#include <random>

namespace cascade {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform double in [0, 1), 53 significant bits.
    double next_unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n), n >= 1. Threshold rejection on the raw
    // 64-bit stream.
    std::uint64_t uniform_below(std::uint64_t n);

    // Exp(rate) waiting time via inverse transform; rate > 0.
    double exponential(double rate) {
        return -std::log1p(-next_unit()) / rate;
    }

  private:
    std::mt19937_64 eng_;
};

// Derived seed for an indexed sub-stream (replica seeds, pipeline stages):
// the (stream+1)-th output of SplitMix64 seeded with `base`. Documented so
// external reproductions can match streams exactly.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

} // namespace cascade
