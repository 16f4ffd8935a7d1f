#include "motrng/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <cmath>
#include <cstring>
#include <memory>

namespace motrng {

int EntropyPool::take_bit() {
    if (consumed_ >= bits_.size()) throw PoolExhausted("entropy pool exhausted");
    return bits_.bit(consumed_++);
}

std::uint64_t EntropyPool::take_bits(int k) {
    if (k < 0 || k > 64) throw std::invalid_argument("take_bits: k must be in [0, 64]");
    if (consumed_ + static_cast<std::size_t>(k) > bits_.size())
        throw PoolExhausted("entropy pool exhausted");
    std::uint64_t v = 0;
    for (int i = 0; i < k; ++i) v = (v << 1) | static_cast<std::uint64_t>(bits_.bit(consumed_++));
    return v;
}

std::vector<std::uint8_t> EntropyPool::take_bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(take_bits(8));
    return out;
}

double EntropyPool::take_centered_uniform() {
    const std::uint64_t b = take_bits(53);
    return (static_cast<double>(b) + 0.5) * 0x1.0p-53 - 0.5;
}

std::string otp(EntropyPool& pool, std::size_t length, const std::string& charset) {
    if (charset.size() < 2) throw std::invalid_argument("otp: charset needs >= 2 symbols");
    const std::size_t n = charset.size();
    int bits = 1;
    while ((1ull << bits) < n) ++bits;
    std::string out;
    out.reserve(length);
    while (out.size() < length) {
        const std::uint64_t draw = pool.take_bits(bits);
        if (draw < n) out.push_back(charset[static_cast<std::size_t>(draw)]);
    }
    return out;
}

std::vector<std::uint8_t> derive_key(EntropyPool& pool, std::size_t key_bits) {
    if (key_bits == 0 || key_bits % 8 != 0)
        throw std::invalid_argument("derive_key: key_bits must be a positive multiple of 8");
    return pool.take_bytes(key_bits / 8);
}

namespace {

void check_ossl(int ok, const char* what) {
    if (ok != 1) throw std::runtime_error(std::string("openssl: ") + what + " failed");
}

std::vector<std::uint8_t> aes256_ctr(const std::vector<std::uint8_t>& key,
                                     const std::array<std::uint8_t, 16>& iv,
                                     const std::vector<std::uint8_t>& in) {
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(
        EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx) throw std::runtime_error("openssl: ctx alloc failed");
    check_ossl(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(),
                                  iv.data()),
               "EncryptInit");
    std::vector<std::uint8_t> out(in.size());
    int len = 0;
    if (!in.empty())
        check_ossl(EVP_EncryptUpdate(ctx.get(), out.data(), &len, in.data(),
                                     static_cast<int>(in.size())),
                   "EncryptUpdate");
    int fin = 0;
    check_ossl(EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &fin), "EncryptFinal");
    return out;
}

std::array<std::uint8_t, 32> hmac_sha256(const std::vector<std::uint8_t>& key,
                                         const std::array<std::uint8_t, 16>& nonce,
                                         const std::vector<std::uint8_t>& ciphertext) {
    std::vector<std::uint8_t> msg;
    msg.reserve(nonce.size() + ciphertext.size());
    msg.insert(msg.end(), nonce.begin(), nonce.end());
    msg.insert(msg.end(), ciphertext.begin(), ciphertext.end());

    std::array<std::uint8_t, 32> tag{};
    unsigned int tag_len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(),
              msg.size(), tag.data(), &tag_len) ||
        tag_len != tag.size())
        throw std::runtime_error("openssl: HMAC failed");
    return tag;
}

} // namespace

std::vector<std::uint8_t> CipherEnvelope::serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(8 + 1 + 16 + 8 + ciphertext.size() + 32);
    out.insert(out.end(), kMagic, kMagic + 8);
    out.push_back(version);
    out.insert(out.end(), nonce.begin(), nonce.end());
    const std::uint64_t len = ciphertext.size();
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
    out.insert(out.end(), ciphertext.begin(), ciphertext.end());
    out.insert(out.end(), auth_tag.begin(), auth_tag.end());
    return out;
}

CipherEnvelope CipherEnvelope::deserialize(const std::vector<std::uint8_t>& raw) {
    constexpr std::size_t kHeader = 8 + 1 + 16 + 8;
    if (raw.size() < kHeader + 32) throw FormatError("envelope: truncated");
    if (std::memcmp(raw.data(), kMagic, 8) != 0) throw FormatError("envelope: bad magic");
    CipherEnvelope env;
    env.version = raw[8];
    if (env.version != kVersion)
        throw FormatError("envelope: unsupported version " + std::to_string(env.version));
    std::memcpy(env.nonce.data(), raw.data() + 9, 16);
    std::uint64_t len = 0;
    for (int i = 0; i < 8; ++i) len = (len << 8) | raw[25 + i];
    if (raw.size() != kHeader + len + 32)
        throw FormatError("envelope: length field does not match payload");
    env.ciphertext.assign(raw.begin() + kHeader,
                          raw.begin() + static_cast<std::ptrdiff_t>(kHeader + len));
    std::memcpy(env.auth_tag.data(), raw.data() + kHeader + len, 32);
    return env;
}

CipherEnvelope encrypt(const std::vector<std::uint8_t>& plaintext, EntropyPool& pool,
                       KeyMaterial& keys_out) {
    keys_out.enc_key = derive_key(pool, 256);
    keys_out.mac_key = derive_key(pool, 256);
    CipherEnvelope env;
    const auto nonce_bytes = pool.take_bytes(16);
    std::copy(nonce_bytes.begin(), nonce_bytes.end(), env.nonce.begin());
    env.ciphertext = aes256_ctr(keys_out.enc_key, env.nonce, plaintext);
    env.auth_tag = hmac_sha256(keys_out.mac_key, env.nonce, env.ciphertext);
    return env;
}

std::vector<std::uint8_t> decrypt(const CipherEnvelope& envelope, const KeyMaterial& keys) {
    if (keys.enc_key.size() != 32 || keys.mac_key.size() != 32)
        throw std::invalid_argument("decrypt: keys must be 32 bytes each");
    const auto expected = hmac_sha256(keys.mac_key, envelope.nonce, envelope.ciphertext);
    if (CRYPTO_memcmp(expected.data(), envelope.auth_tag.data(), expected.size()) != 0)
        throw AuthError("envelope: authentication failed");
    return aes256_ctr(keys.enc_key, envelope.nonce, envelope.ciphertext);
}

} // namespace motrng
