#pragma once
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace motrng {

/// Packed binary sequence, MSB-first within each byte. Trailing pad bits of
/// the last byte are kept zero. This is the single bit-order convention used
/// by the whole pipeline (comparator output, NLFSR seeds, entropy pool,
/// bitmap rows).
class BitStream {
public:
    BitStream() = default;
    explicit BitStream(std::size_t n_bits)
        : n_bits_(n_bits), bytes_((n_bits + 7) / 8, 0) {}

    static BitStream from_bools(const std::vector<std::uint8_t>& bits);
    /// Parse a string of '0'/'1' characters; whitespace is ignored.
    static BitStream from_string(const std::string& s);

    std::size_t size() const { return n_bits_; }
    bool empty() const { return n_bits_ == 0; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    int bit(std::size_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }
    void set_bit(std::size_t i, int v) {
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
        if (v) bytes_[i >> 3] |= mask;
        else   bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }
    void push_back(int v) {
        if (n_bits_ % 8 == 0) bytes_.push_back(0);
        ++n_bits_;
        if (v) set_bit(n_bits_ - 1, 1);
    }

    std::size_t count_ones() const;
    std::string to_string() const;

    bool operator==(const BitStream&) const = default;

private:
    std::size_t n_bits_ = 0;
    std::vector<std::uint8_t> bytes_;
};

/// Raw packed-byte file plus a `<path>.meta` sidecar recording n_bits,
/// bit order and the SHA-256 of the source the bits were derived from.
void write_bitstream(const std::string& path, const BitStream& bits,
                     const std::string& source_hash);
BitStream read_bitstream(const std::string& path);

/// ASCII mode: one '0'/'1' per bit, newline every 64 bits.
void write_bitstream_ascii(const std::string& path, const BitStream& bits);
BitStream read_bitstream_ascii(const std::string& path);

} // namespace motrng
