#pragma once

#include <cstdint>

namespace hhf {

// SplitMix64 with per-instance stream derivation. Instance streams are a pure
// function of (seed, index, attempt), so parallel or out-of-order evaluation
// cannot perturb sampling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index,
                             std::uint64_t attempt = 0) {
        std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ULL);
        s = mix(s ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        s = mix(s ^ (0x632BE59BD9B4E019ULL * (attempt + 1)));
        return SplitMix64(s);
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution, bit-exact across platforms.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    std::uint64_t uniform_index(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

} // namespace hhf
