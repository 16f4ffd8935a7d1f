#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "motrng/crypto.hpp"
#include "motrng/dp.hpp"
#include "motrng/pnm.hpp"
#include "motrng/rng.hpp"
#include "motrng/special_functions.hpp"

using namespace motrng;

namespace {

BitStream random_bits(std::uint64_t seed, std::size_t n) {
    SplitMix64 rng(seed);
    BitStream out(n);
    for (std::size_t i = 0; i < n; i += 64) {
        std::uint64_t w = rng.next();
        for (std::size_t j = 0; j < 64 && i + j < n; ++j)
            if ((w >> (63 - j)) & 1) out.set_bit(i + j, 1);
    }
    return out;
}

BitStream bits_from_bytes(const std::vector<std::uint8_t>& bytes) {
    BitStream out(bytes.size() * 8);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        for (int j = 0; j < 8; ++j)
            if ((bytes[i] >> (7 - j)) & 1) out.set_bit(i * 8 + static_cast<std::size_t>(j), 1);
    return out;
}

} // namespace

TEST_CASE("entropy pool consumes strictly once, in order") {
    EntropyPool pool(BitStream::from_string("10110011" "01010101"));
    CHECK(pool.take_bit() == 1);
    CHECK(pool.take_bits(3) == 0b011);
    CHECK(pool.take_bits(4) == 0b0011);
    CHECK(pool.consumed() == 8);
    CHECK(pool.take_bytes(1) == std::vector<std::uint8_t>{0x55});
    CHECK(pool.remaining() == 0);
    CHECK_THROWS_AS(pool.take_bit(), PoolExhausted);
}

TEST_CASE("derive_key consumes disjoint ranges") {
    std::vector<std::uint8_t> pattern(96);
    for (std::size_t i = 0; i < pattern.size(); ++i)
        pattern[i] = static_cast<std::uint8_t>(i * 7 + 1);
    EntropyPool pool(bits_from_bytes(pattern));

    const auto k1 = derive_key(pool, 256);
    const auto k2 = derive_key(pool, 256);
    CHECK(k1 == std::vector<std::uint8_t>(pattern.begin(), pattern.begin() + 32));
    CHECK(k2 == std::vector<std::uint8_t>(pattern.begin() + 32, pattern.begin() + 64));
    CHECK(pool.consumed() == 512);
    CHECK_THROWS_AS(derive_key(pool, 512), PoolExhausted);
    CHECK_THROWS_AS(derive_key(pool, 7), std::invalid_argument);
}

TEST_CASE("otp on the binary charset is the identity") {
    EntropyPool pool(BitStream::from_string("1011"));
    CHECK(otp(pool, 4, "01") == "1011");
}

TEST_CASE("otp rejection sampling discards out-of-range draws") {
    // 4-bit draws over 10 digits: 1111 (15) rejected, 0011 -> '3'
    EntropyPool pool(BitStream::from_string("11110011"));
    CHECK(otp(pool, 1, "0123456789") == "3");
    CHECK(pool.consumed() == 8);

    EntropyPool tiny(BitStream::from_string("1111"));
    CHECK_THROWS_AS(otp(tiny, 1, "0123456789"), PoolExhausted);
    EntropyPool p2(BitStream::from_string("1111"));
    CHECK_THROWS_AS(otp(p2, 1, "x"), std::invalid_argument);
}

TEST_CASE("otp draws are uniform over a 62-symbol charset") {
    const std::string charset =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    EntropyPool pool(random_bits(31, 1200000));
    const std::string pw = otp(pool, 100000, charset);
    std::array<std::int64_t, 62> counts{};
    for (char c : pw) counts[charset.find(c)]++;
    const double expect = 100000.0 / 62.0;
    double chi2 = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expect;
        chi2 += d * d / expect;
    }
    CHECK(regularized_gamma_q(61.0 / 2.0, chi2 / 2.0) > 0.01);
}

TEST_CASE("envelope serialization is bit exact") {
    CipherEnvelope env;
    env.nonce.fill(0xAB);
    env.ciphertext = {1, 2, 3};
    env.auth_tag.fill(0xCD);
    const auto raw = env.serialize();
    REQUIRE(raw.size() == 8 + 1 + 16 + 8 + 3 + 32);
    CHECK(std::string(raw.begin(), raw.begin() + 8) == "MTRNGENC");
    CHECK(raw[8] == 1);               // version
    CHECK(raw[9] == 0xAB);            // nonce
    CHECK(raw[25 + 7] == 3);          // big-endian length, low byte
    CHECK(raw[25 + 0] == 0);
    CHECK(raw[33] == 1);              // ciphertext
    CHECK(raw.back() == 0xCD);        // tag

    const CipherEnvelope back = CipherEnvelope::deserialize(raw);
    CHECK(back.nonce == env.nonce);
    CHECK(back.ciphertext == env.ciphertext);
    CHECK(back.auth_tag == env.auth_tag);
}

TEST_CASE("aes-256-ctr known-answer via a crafted pool") {
    // SP 800-38A F.5.5 CTR-AES256.Encrypt, block 1
    const std::vector<std::uint8_t> key = {
        0x60, 0x3d, 0xeb, 0x10, 0x15, 0xca, 0x71, 0xbe, 0x2b, 0x73, 0xae,
        0xf0, 0x85, 0x7d, 0x77, 0x81, 0x1f, 0x35, 0x2c, 0x07, 0x3b, 0x61,
        0x08, 0xd7, 0x2d, 0x98, 0x10, 0xa3, 0x09, 0x14, 0xdf, 0xf4};
    const std::vector<std::uint8_t> counter = {0xf0, 0xf1, 0xf2, 0xf3, 0xf4, 0xf5,
                                               0xf6, 0xf7, 0xf8, 0xf9, 0xfa, 0xfb,
                                               0xfc, 0xfd, 0xfe, 0xff};
    const std::vector<std::uint8_t> plaintext = {0x6b, 0xc1, 0xbe, 0xe2, 0x2e, 0x40,
                                                 0x9f, 0x96, 0xe9, 0x3d, 0x7e, 0x11,
                                                 0x73, 0x93, 0x17, 0x2a};
    const std::vector<std::uint8_t> expected = {0x60, 0x1e, 0xc3, 0x13, 0x77, 0x57,
                                                0x89, 0xa5, 0xb7, 0xa7, 0xf5, 0x04,
                                                0xbb, 0xf3, 0xd2, 0x28};
    // pool layout: enc key, mac key (arbitrary), nonce = the reference counter
    std::vector<std::uint8_t> pool_bytes = key;
    for (int i = 0; i < 32; ++i) pool_bytes.push_back(static_cast<std::uint8_t>(i));
    pool_bytes.insert(pool_bytes.end(), counter.begin(), counter.end());

    EntropyPool pool(bits_from_bytes(pool_bytes));
    KeyMaterial keys;
    const CipherEnvelope env = encrypt(plaintext, pool, keys);
    CHECK(keys.enc_key == key);
    CHECK(env.ciphertext == expected);
    CHECK(decrypt(env, keys) == plaintext);
}

TEST_CASE("round trip across sizes, including empty") {
    SplitMix64 rng(404);
    for (const std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{17},
                                  std::size_t{4096}, std::size_t{1000000}}) {
        std::vector<std::uint8_t> plain(len);
        for (auto& b : plain) b = static_cast<std::uint8_t>(rng.next());
        EntropyPool pool(random_bits(rng.next(), 1024));
        KeyMaterial keys;
        const CipherEnvelope env = encrypt(plain, pool, keys);
        CHECK(pool.consumed() == 640);
        CHECK(decrypt(env, keys) == plain);
        const CipherEnvelope back = CipherEnvelope::deserialize(env.serialize());
        CHECK(decrypt(back, keys) == plain);
    }
}

TEST_CASE("corruption and key errors are rejected before any plaintext") {
    SplitMix64 rng(11);
    std::vector<std::uint8_t> plain(512);
    for (auto& b : plain) b = static_cast<std::uint8_t>(rng.next());
    EntropyPool pool(random_bits(9, 1024));
    KeyMaterial keys;
    const CipherEnvelope env = encrypt(plain, pool, keys);
    const auto raw = env.serialize();

    SUBCASE("bit flips in the authenticated body raise AuthError") {
        for (int trial = 0; trial < 64; ++trial) {
            auto bad = raw;
            // restrict to nonce | ciphertext | tag
            const std::size_t lo = 9 * 8;        // past magic+version
            const std::size_t hi = bad.size() * 8;
            std::size_t bitpos = lo + rng.next() % (hi - lo);
            if (bitpos >= 25 * 8 && bitpos < 33 * 8) bitpos += 64; // skip length field
            bad[bitpos / 8] ^= static_cast<std::uint8_t>(1u << (7 - bitpos % 8));
            CHECK_THROWS_AS(decrypt(CipherEnvelope::deserialize(bad), keys), AuthError);
        }
    }
    SUBCASE("header corruption raises FormatError") {
        auto bad = raw;
        bad[0] ^= 1;
        CHECK_THROWS_AS(CipherEnvelope::deserialize(bad), FormatError);
        bad = raw;
        bad[8] = 2;
        CHECK_THROWS_AS(CipherEnvelope::deserialize(bad), FormatError);
        bad = raw;
        bad[30] ^= 0x10; // length field
        CHECK_THROWS_AS(CipherEnvelope::deserialize(bad), FormatError);
        bad = raw;
        bad.resize(bad.size() - 5); // truncation
        CHECK_THROWS_AS(CipherEnvelope::deserialize(bad), FormatError);
    }
    SUBCASE("wrong key raises AuthError, never garbage") {
        KeyMaterial wrong = keys;
        wrong.mac_key[0] ^= 1;
        CHECK_THROWS_AS(decrypt(env, wrong), AuthError);
    }
}

TEST_CASE("laplace noise matches its analytic moments") {
    // mean |X| of Laplace(0, b) is exactly b
    EntropyPool pool(random_bits(123, 53u * 1000000u + 64u));
    const double b = 0.25;
    double abs_sum = 0.0;
    for (int i = 0; i < 1000000; ++i) abs_sum += std::abs(laplace_noise(b, pool));
    CHECK(std::abs(abs_sum / 1e6 - b) / b < 0.02);
}

TEST_CASE("dp_perturb in the large-epsilon limit is numerically silent") {
    PerturbConfig cfg;
    cfg.epsilon = 1e6;
    cfg.sensitivity_delta = 1.0;
    cfg.clip = false;
    Image img;
    img.height = img.width = 64;
    img.pixels.assign(64 * 64, 0.5);
    EntropyPool pool(random_bits(5, 53u * 4096u + 64u));
    const Image noisy = dp_perturb(img, cfg, pool);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        CHECK(std::abs(noisy.pixels[i] - 0.5) < 1e-4);
}

TEST_CASE("dp_perturb clips to the valid range and halving epsilon doubles MAE") {
    Image img;
    img.height = 100;
    img.width = 100;
    img.pixels.assign(10000, 0.5);

    PerturbConfig cfg;
    cfg.clip = true;
    cfg.epsilon = 1.0;
    EntropyPool pool(random_bits(6, 53u * 10000u + 64u));
    const Image clipped = dp_perturb(img, cfg, pool);
    for (double v : clipped.pixels) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    cfg.clip = false;
    auto mae_at = [&](double eps, std::uint64_t seed) {
        PerturbConfig c = cfg;
        c.epsilon = eps;
        EntropyPool p(random_bits(seed, 53u * 10000u + 64u));
        const Image out = dp_perturb(img, c, p);
        return perturbation_report(img, out).mae;
    };
    const double m1 = mae_at(1.0, 77);
    const double m05 = mae_at(0.5, 77); // same pool bits, doubled scale
    CHECK(std::abs(m05 / m1 - 2.0) < 0.05);
    CHECK_THROWS_AS(mae_at(0.0, 1), std::invalid_argument);
}

TEST_CASE("perturbation report closed forms") {
    Image a;
    a.height = a.width = 8;
    a.pixels.assign(64, 0.25);
    const PerturbReport same = perturbation_report(a, a);
    CHECK(same.mae == 0.0);
    CHECK(std::isinf(same.psnr));

    Image b = a;
    for (auto& v : b.pixels) v += 0.1;
    const PerturbReport off = perturbation_report(a, b);
    CHECK(off.mae == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(off.psnr == doctest::Approx(20.0).epsilon(1e-9));

    Image c;
    c.height = 4;
    c.width = 4;
    c.pixels.assign(16, 0.0);
    CHECK_THROWS_AS(perturbation_report(a, c), std::invalid_argument);
}

TEST_CASE("pnm round trips within quantization error") {
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("motrng_pnm_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);

    SplitMix64 rng(15);
    Image gray;
    gray.height = 13;
    gray.width = 7;
    gray.channels = 1;
    gray.pixels.resize(13 * 7);
    for (auto& v : gray.pixels) v = rng.uniform01();

    Image rgb = gray;
    rgb.channels = 3;
    rgb.pixels.resize(13 * 7 * 3);
    for (auto& v : rgb.pixels) v = rng.uniform01();

    for (bool ascii : {false, true}) {
        const std::string gpath = (dir / (ascii ? "g.asc.pgm" : "g.pgm")).string();
        write_pnm(gpath, gray, ascii);
        const Image gback = read_pnm(gpath);
        CHECK(gback.height == gray.height);
        CHECK(gback.channels == 1);
        for (std::size_t i = 0; i < gray.pixels.size(); ++i)
            CHECK(std::abs(gback.pixels[i] - gray.pixels[i]) <= 0.5 / 255.0 + 1e-12);

        const std::string cpath = (dir / (ascii ? "c.asc.ppm" : "c.ppm")).string();
        write_pnm(cpath, rgb, ascii);
        const Image cback = read_pnm(cpath);
        CHECK(cback.channels == 3);
        for (std::size_t i = 0; i < rgb.pixels.size(); ++i)
            CHECK(std::abs(cback.pixels[i] - rgb.pixels[i]) <= 0.5 / 255.0 + 1e-12);
    }

    // header comments are skipped; 16-bit maxval is rejected
    {
        std::ofstream f((dir / "c16.pgm").string());
        f << "P2\n# a comment\n2 2\n65535\n0 1 2 3\n";
    }
    CHECK_THROWS(read_pnm((dir / "c16.pgm").string()));
    {
        std::ofstream f((dir / "trunc.pgm").string(), std::ios::binary);
        f << "P5\n4 4\n255\nab";
    }
    CHECK_THROWS(read_pnm((dir / "trunc.pgm").string()));

    fs::remove_all(dir);
}
