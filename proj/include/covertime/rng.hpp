#pragma once

#include <cstdint>
#include <string_view>

namespace covertime {

/// Identifier of the generator family, recorded in run metadata so that
/// stochastic results can be reproduced by any conforming implementation.
inline constexpr std::string_view kRngAlgorithm = "xoshiro256**+splitmix64";

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** with the state derived from (seed, stream) via splitmix64.
/// Distinct streams give statistically independent sequences, which keeps
/// per-trial simulation streams reproducible regardless of thread count.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream = 0) {
        SplitMix64 seeder{seed};
        SplitMix64 streamer{stream ^ 0x6A09E667F3BCC909ull};
        for (auto& word : state_) word = seeder.next() ^ streamer.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, bound) by bitmask rejection; unbiased and portable.
    std::uint32_t uniform_below(std::uint32_t bound) {
        if (bound <= 1) return 0;
        std::uint32_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        for (;;) {
            const auto candidate = static_cast<std::uint32_t>(next() >> 32) & mask;
            if (candidate < bound) return candidate;
        }
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace covertime
