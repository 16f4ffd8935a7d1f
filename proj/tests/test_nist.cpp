#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <map>

#include "fixtures/nist_fixtures.hpp"
#include "motrng/nist.hpp"
#include "motrng/nlfsr.hpp"
#include "motrng/presets.hpp"
#include "motrng/rng.hpp"
#include "motrng/signal_chain.hpp"

using namespace motrng;
using namespace motrng::nist;

namespace {

BitStream bits(const char* s) { return BitStream::from_string(s); }

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

BitStream repeated(const char* pattern, std::size_t n) {
    BitStream out;
    std::size_t i = 0;
    while (out.size() < n) {
        out.push_back(pattern[i] == '1');
        i = (i + 1) % std::strlen(pattern);
    }
    return out;
}

constexpr double kTol = 1e-9; // frozen-oracle agreement (acceptance allows 1e-6)

} // namespace

TEST_CASE("frequency statistic matches the oracle") {
    CHECK(std::abs(frequency_p(bits(fixtures::kFreqBits)) - fixtures::kFreqP) < kTol);

    BitStream zeros(1000);
    CHECK(frequency_p(zeros) < 1e-10);

    const BitStream alt = repeated("10", 500);
    CHECK(frequency_p(alt) > 0.97); // |S_n| is 0 or 1
}

TEST_CASE("block frequency matches the oracle") {
    CHECK(std::abs(block_frequency_p(bits(fixtures::kBlockFreqBits), fixtures::kBlockFreqM) -
                   fixtures::kBlockFreqP) < kTol);
    CHECK(std::abs(block_frequency_p(bits(fixtures::kBlockFreqOneHotBits), 4) -
                   fixtures::kBlockFreqOneHotP) < kTol);

    // every block exactly half ones -> chi2 = 0 -> p = 1
    const BitStream half = repeated("1100", 400);
    CHECK(block_frequency_p(half, 4) == doctest::Approx(1.0).epsilon(1e-12));

    // gating: block longer than the stream
    TestParams tp;
    tp.block_length_m = 64;
    const TestEntry e = test_block_frequency(bits("1010"), tp);
    CHECK_FALSE(e.applicable);
}

TEST_CASE("cumulative sums match the oracle and reverse symmetrically") {
    const auto [fwd, bwd] = cumulative_sums_p(bits(fixtures::kCusumBits));
    CHECK(std::abs(fwd - fixtures::kCusumFwdP) < kTol);
    CHECK(std::abs(bwd - fixtures::kCusumBwdP) < kTol);

    const auto [small_fwd, small_bwd] = cumulative_sums_p(bits("1011010111"));
    (void)small_bwd;
    CHECK(std::abs(small_fwd - fixtures::kCusumSmallFwdP) < kTol);

    // all ones: excursion z = n, p collapses
    BitStream ones;
    for (int i = 0; i < 1000; ++i) ones.push_back(1);
    const auto [pf, pb] = cumulative_sums_p(ones);
    CHECK(pf < 1e-10);
    CHECK(pb < 1e-10);

    // bit reversal swaps forward and backward exactly
    const BitStream x = random_bits(5, 300);
    BitStream rev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) rev.set_bit(i, x.bit(x.size() - 1 - i));
    const auto [xf, xb] = cumulative_sums_p(x);
    const auto [rf, rb] = cumulative_sums_p(rev);
    CHECK(xf == rb);
    CHECK(xb == rf);
}

TEST_CASE("runs statistic matches the oracle") {
    const auto p = runs_p(bits(fixtures::kRunsBits));
    REQUIRE(p.has_value());
    CHECK(std::abs(*p - fixtures::kRunsP) < kTol);

    // perfect alternation: V_n = n, far above the expectation
    const auto alt = runs_p(repeated("10", 1000));
    REQUIRE(alt.has_value());
    CHECK(*alt < 1e-10);

    // prerequisite gating
    BitStream skew;
    for (int i = 0; i < 1000; ++i) skew.push_back(i % 10 == 0);
    CHECK_FALSE(runs_p(skew).has_value());
    TestParams tp;
    CHECK_FALSE(test_runs(skew, tp).applicable);
}

TEST_CASE("longest run matches the oracle") {
    CHECK(std::abs(longest_run_p(bits(fixtures::kLongestBits), 8) - fixtures::kLongestP) < kTol);

    // deterministic 6272-bit fixture (popcount parity of i * 2654435761)
    BitStream big(6272);
    for (std::uint32_t i = 0; i < 6272; ++i) {
        const std::uint32_t v = i * 2654435761u;
        if (std::popcount(v) & 1u) big.set_bit(i, 1);
    }
    CHECK(std::abs(longest_run_p(big, 128) - fixtures::kLongestBigP) < kTol);

    BitStream ones;
    for (int i = 0; i < 128; ++i) ones.push_back(1);
    CHECK(longest_run_p(ones, 8) < 1e-10);

    // runs shorter than the lowest category all land in the first bin:
    // all-zeros has longest run 0 per block, binned with <=1
    BitStream zeros(128);
    CHECK(longest_run_p(zeros, 8) < 1e-10);

    CHECK_THROWS_AS(longest_run_p(ones, 64), std::invalid_argument);
    TestParams tp;
    CHECK_FALSE(test_longest_run(bits("1010"), tp).applicable);
}

TEST_CASE("fft statistic matches the oracle") {
    CHECK(std::abs(fft_p(bits(fixtures::kFftBits)) - fixtures::kFftP) < kTol);
    CHECK(std::abs(fft_p(bits(fixtures::kFftAltBits)) - fixtures::kFftAltP) < kTol);

    // all zeros: |X_0| = n dominates, every other magnitude is 0
    BitStream zeros(1000);
    CHECK(fft_p(zeros) < 1e-10);

    // complementing flips the sign of every sample; magnitudes are invariant
    const BitStream x = random_bits(8, 2048);
    BitStream comp(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) comp.set_bit(i, 1 - x.bit(i));
    CHECK(fft_p(x) == doctest::Approx(fft_p(comp)).epsilon(1e-12));
}

TEST_CASE("non-overlapping template matches the oracle") {
    BitStream zeros(20);
    CHECK(std::abs(nonoverlapping_template_p(zeros, bits("111"), 4) -
                   fixtures::kTemplateZeroP) < kTol);
    CHECK(std::abs(nonoverlapping_template_p(bits(fixtures::kTemplatePiBits), bits("101"), 4) -
                   fixtures::kTemplatePiP) < kTol);

    // template "1" in an alternating stream matches exactly half of each block
    const BitStream alt = repeated("10", 100);
    const double p = nonoverlapping_template_p(alt, bits("1"), 4);
    CHECK(p > 0.99); // W = 12.5 +- 0.5 against mean 12.5: tiny chi2

    TestParams tp;
    tp.template_bits = "111111111111";
    CHECK_FALSE(test_nonoverlapping_template(bits("10101010"), tp).applicable);
}

TEST_CASE("aperiodic template enumeration") {
    CHECK(aperiodic_templates(9).size() == static_cast<std::size_t>(fixtures::kAperiodicCountM9));
    // every template must be self-overlap free
    for (const auto& t : aperiodic_templates(5)) {
        for (std::size_t j = 1; j < t.size(); ++j) {
            bool overlap = true;
            for (std::size_t i = 0; i + j < t.size(); ++i)
                if (t.bit(i) != t.bit(i + j)) {
                    overlap = false;
                    break;
                }
            CHECK_FALSE(overlap);
        }
    }
}

TEST_CASE("serial matches the oracle and reduces to frequency at m=1") {
    const auto [p1, p2] = serial_p(bits(fixtures::kSerialBits), 3);
    CHECK(std::abs(p1 - fixtures::kSerialP1) < kTol);
    CHECK(std::abs(p2 - fixtures::kSerialP2) < kTol);
    const auto [q1, q2] = serial_p(bits(fixtures::kBlockFreqBits), 3);
    CHECK(std::abs(q1 - fixtures::kSerial20P1) < kTol);
    CHECK(std::abs(q2 - fixtures::kSerial20P2) < kTol);

    // psi^2_1 = S_n^2 / n makes the first serial p-value the frequency p
    const BitStream x = random_bits(21, 500);
    CHECK(serial_p(x, 1).first == doctest::Approx(frequency_p(x)).epsilon(1e-12));

    BitStream zeros(1024);
    CHECK(serial_p(zeros, 3).first < 1e-10);
}

TEST_CASE("approximate entropy matches the oracle") {
    CHECK(std::abs(approximate_entropy_p(bits(fixtures::kApenBits), fixtures::kApenM) -
                   fixtures::kApenP) < kTol);

    // all zeros: ApEn = 0, chi2 = 2 n ln 2
    BitStream zeros(100);
    CHECK(approximate_entropy_p(zeros, 2) < 1e-12);

    // de Bruijn sequence of order m+1: every (m+1)-pattern appears exactly
    // once with wraparound, so ApEn(m) = ln 2 exactly and chi2 = 0
    const BitStream db = bits("00010111"); // order-3 de Bruijn
    CHECK(approximate_entropy_p(db, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random excursions match the brute-force fixture") {
    const auto st = random_excursions_stats(bits(fixtures::kExcBits));
    CHECK(st.cycles == fixtures::kExcCycles);
    REQUIRE(st.state_p.size() == 8);
    REQUIRE(st.variant_p.size() == 18);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(st.state_p[static_cast<std::size_t>(i)] - fixtures::kExcStateP[i]) < kTol);
    for (int i = 0; i < 18; ++i)
        CHECK(std::abs(st.variant_p[static_cast<std::size_t>(i)] - fixtures::kExcVariantP[i]) < kTol);

    // gating: tiny stream, and the never-returning all-zeros walk
    TestParams tp;
    CHECK_FALSE(test_random_excursions(bits(fixtures::kExcBits), tp).applicable);
    BitStream zeros(5000);
    CHECK_FALSE(test_random_excursions(zeros, tp).applicable);
    CHECK_FALSE(test_random_excursions_variant(zeros, tp).applicable);
}

TEST_CASE("p-values stay in [0, 1] across assorted streams") {
    TestParams tp;
    for (std::uint64_t seed : {2ULL, 3ULL, 4ULL}) {
        const BitStream x = random_bits(seed, 4096);
        const TestReport rep = run_suite(x, tp);
        for (const auto& e : rep.entries)
            for (double p : e.p_values) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
    }
}

TEST_CASE("complementing bits preserves the frequency-family p-values") {
    const BitStream x = random_bits(17, 2000);
    BitStream comp(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) comp.set_bit(i, 1 - x.bit(i));
    CHECK(frequency_p(x) == doctest::Approx(frequency_p(comp)).epsilon(1e-12));
    CHECK(block_frequency_p(x, 40) ==
          doctest::Approx(block_frequency_p(comp, 40)).epsilon(1e-12));
}

TEST_CASE("suite verdict on an adversarial and a healthy stream") {
    TestParams tp;

    BitStream zeros(100000);
    const TestReport bad = run_suite(zeros, tp);
    CHECK_FALSE(bad.all_pass());
    for (const auto& e : bad.entries) {
        if (!e.applicable) continue;
        CHECK_MESSAGE(!e.pass, e.name);
    }

    const BitStream good = random_bits(2718281828ULL, 100000);
    const TestReport rep = run_suite(good, tp);
    CHECK(rep.all_pass());

    // determinism of the whole report
    const TestReport rep2 = run_suite(good, tp);
    CHECK(report_to_json(rep) == report_to_json(rep2));
    CHECK(render_table(rep).find("Frequency") != std::string::npos);
}

TEST_CASE("both pipeline stages: raw bits pass, expanded bits expose the short register") {
    const Preset bitrate = preset("bitrate");
    const CurrentTrace trace = simulate(bitrate.sim);
    const ChainOutput ports = run_chain(trace, bitrate.chain);
    REQUIRE(ports.bits.size() == 1000000);

    TestParams tp;
    const TestReport raw = run_suite(ports.bits, tp);
    CHECK(raw.all_pass());

    // The throughput expander recycles a 2^20-1 cycle; one million output
    // bits cover most of it, so reseed segments collide and 16-bit pattern
    // counts clump. The serial test catches exactly that; everything else
    // still passes. Whether the original battery saw the expanded stream is
    // unknowable, so this records the behavior rather than asserting success.
    const BitStream expanded =
        expand(ports.bits, NlfsrSpec::default_spec(20), 1024, 1000000);
    const TestReport ex = run_suite(expanded, tp);
    for (const auto& e : ex.entries) {
        if (!e.applicable) continue;
        if (e.name == "Serial") CHECK_FALSE(e.pass);
        else CHECK_MESSAGE(e.pass, e.name);
    }
}

TEST_CASE("pass rate over 100 reference streams is at least 96 per test") {
    TestParams tp;
    std::map<std::string, std::pair<int, int>> tally; // name -> {applicable, passed}
    for (std::uint64_t s = 1; s <= 100; ++s) {
        const BitStream x = random_bits(s * 104729ULL, 100000);
        const TestReport rep = run_suite(x, tp);
        for (const auto& e : rep.entries) {
            if (!e.applicable) continue;
            auto& [n, ok] = tally[e.name];
            ++n;
            ok += e.pass;
        }
    }
    for (const auto& [name, counts] : tally) {
        const auto& [n, ok] = counts;
        INFO(name, ": ", ok, "/", n);
        CHECK(ok * 100 >= 96 * n);
    }
}
