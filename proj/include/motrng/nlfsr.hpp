#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "motrng/bitstream.hpp"

namespace motrng {

/// Feedback shift register specification. The feedback function is given in
/// algebraic normal form: a list of AND-monomials over tap indices, XORed
/// together. Serialized as `width=N;anf=0,1,2*3`.
///
/// Clocking convention: the output bit is the register LSB (x0); the
/// register shifts right; the new MSB is feedback(previous register).
/// Every shipped default has x0 as a linear term, which makes the state
/// update a bijection.
struct NlfsrSpec {
    int width_n = 0;
    std::vector<std::vector<int>> feedback; // monomials, each a list of taps
    bool include_zero_state = false;        // de Bruijn completion

    /// Canonicalize (sort taps, dedupe monomials appearing an even number
    /// of times) and check every tap index is < width_n.
    void canonicalize();
    void validate() const;

    std::string serialize() const;
    static NlfsrSpec parse(const std::string& text);

    /// Shipped full-period defaults, width in {4, 8, 16, 20}. Each is
    /// verified to have period 2^n - 1 by the test suite's exhaustive walk.
    static NlfsrSpec default_spec(int width_n);

    bool feedback_bit(std::uint32_t reg) const;
};

struct ExpanderState {
    std::uint32_t reg = 0;
    NlfsrSpec spec;
    std::int64_t bits_since_reseed = 0;
    std::int64_t reseed_interval = 1024;
};

/// One clock: returns the output bit and advances the register. With
/// include_zero_state the all-zero state is spliced into the cycle right
/// after 0...01, extending the period by one.
int clock_bit(ExpanderState& state);

struct PeriodInfo {
    std::uint64_t period = 0;   // cycle length through the canonical seed 0..01
    bool full_cycle = false;    // every nonzero state (or every state when
                                // include_zero_state) lies on that cycle
};

/// Exhaustive walk from seed 0..01; width must be <= 24.
PeriodInfo period(const NlfsrSpec& spec);

/// Seeded expansion: load width_n seed bits, clock out reseed_interval bits,
/// reload, repeat until n_out bits. All-zero seed chunks are replaced by
/// 0..01 (the register dead state); this is reported through the optional
/// warning counter.
BitStream expand(const BitStream& seed_bits, const NlfsrSpec& spec,
                 std::int64_t reseed_interval, std::int64_t n_out,
                 std::int64_t* zero_chunks_replaced = nullptr);

/// Row-major side x side monochrome image from the first side^2 bits,
/// bit 1 = black, serialized as ASCII P1 with a comment line recording the
/// register spec and a hash of the seed source.
void write_bitmap_p1(const std::string& path, const BitStream& bits,
                     std::size_t side, const std::string& comment);

} // namespace motrng
