#pragma once
#include <cstdint>

namespace motrng {

/// SplitMix64 (Steele, Lea & Flood / Vigna reference constants).
///
/// This is the pinned generator for every reproducible artifact in this
/// project: integer-only state update, identical output on every platform.
/// Because the state advances by a fixed increment per draw, the k-th draw
/// ahead of any state can be computed directly, which lets the simulator
/// evaluate a step's draws in vectorized order without changing the
/// sequential draw contract. Golden fixtures in the tests depend on this
/// exact sequence; do not change the constants.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit constexpr SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t next() { return mix(state_ += kGamma); }
    constexpr std::uint64_t operator()() { return next(); }

    /// Value of draw number i (1-based) past the current state, without
    /// advancing. next() == peek(1).
    constexpr std::uint64_t peek(std::uint64_t i) const {
        return mix(state_ + i * kGamma);
    }

    /// Advance as if n draws had been consumed.
    constexpr void discard(std::uint64_t n) { state_ += n * kGamma; }

    constexpr std::uint64_t state() const { return state_; }

    /// Uniform double in [0,1) with 53 random bits.
    constexpr double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~0ULL; }

private:
    std::uint64_t state_;
};

} // namespace motrng
