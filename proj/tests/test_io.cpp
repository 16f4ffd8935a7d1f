#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "motrng/bitstream.hpp"
#include "motrng/config.hpp"
#include "motrng/rng.hpp"
#include "motrng/trace_io.hpp"

using namespace motrng;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("motrng_io_" + std::to_string(SplitMix64(std::random_device{}()).next()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("bitstream packs MSB-first with zero padding") {
    BitStream b;
    for (int bit : {1, 0, 1, 1, 0, 0, 1, 0, 1}) b.push_back(bit);
    CHECK(b.size() == 9);
    CHECK(b.bytes().size() == 2);
    CHECK(b.bytes()[0] == 0xb2); // 10110010
    CHECK(b.bytes()[1] == 0x80); // 1 then zero pad
    CHECK(b.count_ones() == 5);
    CHECK(b.to_string() == "101100101");
    CHECK(BitStream::from_string("1011 0010\n1") == b);
}

TEST_CASE("bitstream rejects junk characters") {
    CHECK_THROWS_AS(BitStream::from_string("10x1"), std::invalid_argument);
}

TEST_CASE("bitstream file round trip with sidecar") {
    TempDir tmp;
    SplitMix64 rng(5);
    BitStream b;
    for (int i = 0; i < 1003; ++i) b.push_back(static_cast<int>(rng.next() >> 63));
    const std::string path = tmp.file("x.bits");
    write_bitstream(path, b, "deadbeef");
    CHECK(read_bitstream(path) == b);

    std::ifstream meta(path + ".meta");
    std::string text((std::istreambuf_iterator<char>(meta)),
                     std::istreambuf_iterator<char>());
    CHECK(text.find("n_bits=1003") != std::string::npos);
    CHECK(text.find("bit_order=msb_first") != std::string::npos);
    CHECK(text.find("source_sha256=deadbeef") != std::string::npos);

    const std::string ascii = tmp.file("x.txt");
    write_bitstream_ascii(ascii, b);
    CHECK(read_bitstream_ascii(ascii) == b);
}

TEST_CASE("bitstream read validates sidecar") {
    TempDir tmp;
    const std::string path = tmp.file("orphan.bits");
    std::ofstream(path, std::ios::binary) << "\xff";
    CHECK_THROWS(read_bitstream(path)); // missing .meta
}

TEST_CASE("config parses key=value with comments") {
    const Config cfg = Config::from_string(
        "# header comment\n"
        "sim.n_dipoles = 100\n"
        "sim.dt=0.067   # inline comment\n"
        "\n"
        "chain.gain_g=1e6\n");
    CHECK(cfg.get_int("sim.n_dipoles", 0) == 100);
    CHECK(cfg.get_double("sim.dt", 0) == doctest::Approx(0.067));
    CHECK(cfg.get_double("chain.gain_g", 0) == doctest::Approx(1e6));
    CHECK(cfg.get_string("absent", "fallback") == "fallback");
}

TEST_CASE("config rejects malformed lines and unknown keys") {
    CHECK_THROWS_AS(Config::from_string("not a pair\n"), std::invalid_argument);
    CHECK_THROWS_AS(Config::from_string("=value\n"), std::invalid_argument);
    const Config cfg = Config::from_string("sim.bogus=1\n");
    CHECK_THROWS_AS(cfg.require_known_keys({"sim.dt"}), std::invalid_argument);
}

TEST_CASE("config overrides win") {
    Config base = Config::from_string("a=1\nb=2\n");
    Config over = Config::from_string("b=3\nc=4\n");
    base.merge_overrides(over);
    CHECK(base.get_int("a", 0) == 1);
    CHECK(base.get_int("b", 0) == 3);
    CHECK(base.get_int("c", 0) == 4);
}

TEST_CASE("config number parsing is strict") {
    const Config cfg = Config::from_string("x=12abc\ny=1.5\n");
    CHECK_THROWS_AS(cfg.get_int("x", 0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_int("y", 0), std::invalid_argument);
    CHECK(cfg.get_double("y", 0) == doctest::Approx(1.5));
}

TEST_CASE("series csv round-trips doubles exactly") {
    TempDir tmp;
    SplitMix64 rng(11);
    std::vector<double> samples(257);
    for (auto& s : samples) s = (rng.uniform01() - 0.5) * 1e-6;
    const std::string path = tmp.file("t.csv");
    write_series_csv(path, "t_s,i_A", 0.067, samples);

    const SeriesCsv back = read_series_csv(path);
    CHECK(back.header == "t_s,i_A");
    REQUIRE(back.values.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        CHECK(back.values[i] == samples[i]); // bit-exact via %.17g
    CHECK(back.dt == doctest::Approx(0.067).epsilon(1e-12));
}

TEST_CASE("sha256 matches the reference digest of abc") {
    CHECK(sha256_bytes("abc", 3) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
