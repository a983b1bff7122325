#pragma once

#include <cstdint>

namespace maxload {

// SplitMix64 (Steele/Lea/Flood); used only to expand seeds into xoshiro state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xoshiro256** (Blackman/Vigna). Small, fast, and fully specified so results
// reproduce across platforms.
struct Xoshiro256ss {
    std::uint64_t s[4];

    static Xoshiro256ss from_seed(std::uint64_t seed) {
        SplitMix64 sm(seed);
        Xoshiro256ss g;
        for (auto& w : g.s) w = sm.next();
        return g;
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Unbiased uniform draw from [0, bound) by rejection below the threshold
    // 2^64 mod bound.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }
};

}  // namespace maxload
