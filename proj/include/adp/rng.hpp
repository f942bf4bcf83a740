#pragma once

#include <cstdint>

namespace adp {

/// SplitMix64 (Steele, Lea & Flood): a 64-bit counter advanced by the golden
/// gamma, output through a fixed avalanche mix. Every random choice in this
/// project flows through this generator so that (seed, input) -> output is
/// reproducible across platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [0, bound). Modulo reduction, chosen deliberately: the bias
    /// is negligible for the bounds used here and the mapping is trivial to
    /// reproduce in any language.
    std::uint64_t next_below(std::uint64_t bound) {
        return next() % bound;
    }

private:
    std::uint64_t state_;
};

/// Standard normal deviates via Box-Muller on SplitMix64 uniforms.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next();

    SplitMix64& uniform() { return rng_; }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace adp
