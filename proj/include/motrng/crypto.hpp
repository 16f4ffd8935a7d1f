#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "motrng/bitstream.hpp"

namespace motrng {

struct PoolExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strictly-once, in-order consumer of generated bits. Every operation that
/// spends entropy draws from a pool; ranges never overlap and running out
/// is an error, never a silent wraparound.
class EntropyPool {
public:
    explicit EntropyPool(BitStream bits) : bits_(std::move(bits)) {}

    std::size_t consumed() const { return consumed_; }
    std::size_t remaining() const { return bits_.size() - consumed_; }

    int take_bit();
    /// Next k bits (k <= 64) as an MSB-first integer.
    std::uint64_t take_bits(int k);
    std::vector<std::uint8_t> take_bytes(std::size_t n);

    /// Uniform deviate in (-1/2, 1/2) built from exactly 53 bits:
    /// u = ((b + 1/2) / 2^53) - 1/2 where b is the 53-bit MSB-first integer.
    /// Never returns 0 or +-1/2 exactly.
    double take_centered_uniform();

private:
    BitStream bits_;
    std::size_t consumed_ = 0;
};

/// Uniform password over `charset` via rejection sampling: ceil(log2 N)
/// bits per draw, values >= N discarded and redrawn. No modulo bias.
std::string otp(EntropyPool& pool, std::size_t length, const std::string& charset);

/// Consumes exactly key_bits bits (multiple of 8) from the pool.
std::vector<std::uint8_t> derive_key(EntropyPool& pool, std::size_t key_bits = 256);

struct DecryptError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AuthError : DecryptError {
    using DecryptError::DecryptError;
};
struct FormatError : DecryptError {
    using DecryptError::DecryptError;
};

/// Versioned encrypt-then-MAC envelope.
///
/// Binary layout, bit exact:
///   magic "MTRNGENC" | version byte (1) | 16-byte nonce |
///   8-byte big-endian ciphertext length | ciphertext |
///   32-byte HMAC-SHA256 over nonce || ciphertext.
struct CipherEnvelope {
    static constexpr char kMagic[9] = "MTRNGENC";
    static constexpr std::uint8_t kVersion = 1;

    std::uint8_t version = kVersion;
    std::array<std::uint8_t, 16> nonce{};
    std::vector<std::uint8_t> ciphertext;
    std::array<std::uint8_t, 32> auth_tag{};

    std::vector<std::uint8_t> serialize() const;
    static CipherEnvelope deserialize(const std::vector<std::uint8_t>& raw);
};

struct KeyMaterial {
    std::vector<std::uint8_t> enc_key; // 32 bytes, AES-256-CTR
    std::vector<std::uint8_t> mac_key; // 32 bytes, HMAC-SHA256
};

/// Draws enc key (256 bits), mac key (256 bits) and nonce (128 bits) from
/// the pool, in that order. The key material is returned so the envelope
/// can be decrypted later.
CipherEnvelope encrypt(const std::vector<std::uint8_t>& plaintext, EntropyPool& pool,
                       KeyMaterial& keys_out);

/// Verifies the authenticator before touching the ciphertext; a wrong key
/// or any corruption raises AuthError (or FormatError for a malformed
/// envelope), never garbage plaintext.
std::vector<std::uint8_t> decrypt(const CipherEnvelope& envelope, const KeyMaterial& keys);

} // namespace motrng
