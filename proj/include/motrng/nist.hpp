#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "motrng/bitstream.hpp"

namespace motrng {
namespace nist {

/// Battery parameters. Zero-valued lengths select the standard defaults,
/// scaled down when the stream is short.
struct TestParams {
    std::int64_t block_length_m = 0; // block frequency; 0 = max(20, n/50)
    std::string template_bits;       // non-overlapping template; empty = all
                                     // aperiodic templates of length 9
    std::int64_t serial_m = 0;       // 0 = min(16, floor(log2 n) - 3)
    std::int64_t apen_m = 0;         // 0 = min(10, floor(log2 n) - 6)
    double significance = 0.01;
};

struct TestEntry {
    std::string name;
    std::vector<double> p_values;  // the reported value(s), as in the summary table
    std::vector<double> detail_p_values; // per-template / per-state breakdown
    bool pass = false;
    bool applicable = true;
    std::string note;
};

struct TestReport {
    double significance = 0.01;
    std::vector<TestEntry> entries;
    bool all_pass() const;
};

// --- raw statistics ------------------------------------------------------
// Pure p-value formulas with no length gating, usable on tiny fixtures.
// The entry-level wrappers below add the applicability rules.

double frequency_p(const BitStream& bits);
double block_frequency_p(const BitStream& bits, std::int64_t m);
std::pair<double, double> cumulative_sums_p(const BitStream& bits);
/// nullopt when the frequency prerequisite |pi - 1/2| >= 2/sqrt(n) fails.
std::optional<double> runs_p(const BitStream& bits);
/// m must be one of 8, 128, 10000 (the tabulated block sizes).
double longest_run_p(const BitStream& bits, std::int64_t m);
double fft_p(const BitStream& bits);
double nonoverlapping_template_p(const BitStream& bits, const BitStream& tmpl,
                                 std::int64_t n_blocks = 8);
std::pair<double, double> serial_p(const BitStream& bits, std::int64_t m);
double approximate_entropy_p(const BitStream& bits, std::int64_t m);

struct ExcursionStats {
    std::int64_t cycles = 0;                 // J
    std::vector<double> state_p;             // x = -4..-1, 1..4
    std::vector<double> variant_p;           // x = -9..-1, 1..9
};
ExcursionStats random_excursions_stats(const BitStream& bits);

/// All aperiodic (self-overlap-free) templates of length m, in ascending
/// numeric order. For m = 9 there are 148 of them.
std::vector<BitStream> aperiodic_templates(int m);

// --- battery entries -----------------------------------------------------

TestEntry test_frequency(const BitStream& bits, const TestParams& params);
TestEntry test_block_frequency(const BitStream& bits, const TestParams& params);
TestEntry test_cumulative_sums(const BitStream& bits, const TestParams& params);
TestEntry test_runs(const BitStream& bits, const TestParams& params);
TestEntry test_longest_run(const BitStream& bits, const TestParams& params);
TestEntry test_fft(const BitStream& bits, const TestParams& params);
TestEntry test_nonoverlapping_template(const BitStream& bits, const TestParams& params);
TestEntry test_serial(const BitStream& bits, const TestParams& params);
TestEntry test_approximate_entropy(const BitStream& bits, const TestParams& params);
TestEntry test_random_excursions(const BitStream& bits, const TestParams& params);
TestEntry test_random_excursions_variant(const BitStream& bits, const TestParams& params);

/// Runs every implemented test and aggregates the entries in summary-table
/// order.
TestReport run_suite(const BitStream& bits, const TestParams& params);

/// Plain-text table: #, Name, P-value, Success, Post-processing.
std::string render_table(const TestReport& report);

nlohmann::json report_to_json(const TestReport& report);

} // namespace nist
} // namespace motrng
