#include "motrng/nist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "motrng/dft.hpp"
#include "motrng/special_functions.hpp"

namespace motrng {
namespace nist {

namespace {

std::vector<std::uint8_t> unpack(const BitStream& bits) {
    std::vector<std::uint8_t> v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) v[i] = static_cast<std::uint8_t>(bits.bit(i));
    return v;
}

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

/// Per-comparison level that keeps the family-wise false-alarm rate at
/// alpha across k independent p-values (Sidak).
double sidak_level(double alpha, std::size_t k) {
    if (k <= 1) return alpha;
    return 1.0 - std::pow(1.0 - alpha, 1.0 / static_cast<double>(k));
}

TestEntry not_applicable(std::string name, std::string why) {
    TestEntry e;
    e.name = std::move(name);
    e.applicable = false;
    e.pass = false;
    e.note = std::move(why);
    return e;
}

std::int64_t auto_block_m(std::size_t n) {
    return std::max<std::int64_t>(20, static_cast<std::int64_t>(n) / 50);
}

std::int64_t auto_serial_m(std::size_t n) {
    std::int64_t lg = 0;
    while ((1ull << (lg + 1)) <= n) ++lg;
    return std::clamp<std::int64_t>(lg - 3, 1, 16);
}

std::int64_t auto_apen_m(std::size_t n) {
    std::int64_t lg = 0;
    while ((1ull << (lg + 1)) <= n) ++lg;
    return std::clamp<std::int64_t>(lg - 6, 1, 10);
}

/// Overlapping m-bit pattern counts with wraparound; counts has 2^m slots.
std::vector<std::int64_t> pattern_counts(const std::vector<std::uint8_t>& e,
                                         std::int64_t m) {
    const std::size_t n = e.size();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(1) << m, 0);
    const std::uint64_t mask = (static_cast<std::uint64_t>(1) << m) - 1;
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(m) - 1; ++i)
        idx = (idx << 1) | e[i % n];
    for (std::size_t i = 0; i < n; ++i) {
        idx = ((idx << 1) | e[(i + static_cast<std::size_t>(m) - 1) % n]) & mask;
        ++counts[idx];
    }
    return counts;
}

double psi_squared(const std::vector<std::uint8_t>& e, std::int64_t m) {
    if (m <= 0) return 0.0;
    const auto counts = pattern_counts(e, m);
    const double n = static_cast<double>(e.size());
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    return sum * std::ldexp(1.0, static_cast<int>(m)) / n - n;
}

double phi_m(const std::vector<std::uint8_t>& e, std::int64_t m) {
    if (m <= 0) return 0.0;
    const auto counts = pattern_counts(e, m);
    const double n = static_cast<double>(e.size());
    double sum = 0.0;
    for (auto c : counts)
        if (c > 0) {
            const double ci = static_cast<double>(c) / n;
            sum += ci * std::log(ci);
        }
    return sum;
}

} // namespace

// --- raw statistics ------------------------------------------------------

double frequency_p(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n == 0) throw std::invalid_argument("frequency: empty stream");
    const auto ones = static_cast<std::int64_t>(bits.count_ones());
    const double s = static_cast<double>(2 * ones - static_cast<std::int64_t>(n));
    const double s_obs = std::abs(s) / std::sqrt(static_cast<double>(n));
    return clamp_p(motrng::erfc(s_obs / std::sqrt(2.0)));
}

double block_frequency_p(const BitStream& bits, std::int64_t m) {
    const std::size_t n = bits.size();
    if (m < 1) throw std::invalid_argument("block_frequency: m must be >= 1");
    const std::size_t blocks = n / static_cast<std::size_t>(m);
    if (blocks == 0) throw std::invalid_argument("block_frequency: stream shorter than block");
    double chi2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::int64_t ones = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i)
            ones += bits.bit(b * static_cast<std::size_t>(m) + i);
        const double pi = static_cast<double>(ones) / static_cast<double>(m);
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * static_cast<double>(m);
    return clamp_p(regularized_gamma_q(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
}

std::pair<double, double> cumulative_sums_p(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n == 0) throw std::invalid_argument("cumulative_sums: empty stream");

    auto one_mode = [n](auto bit_at) {
        std::int64_t s = 0, z = 0;
        for (std::size_t i = 0; i < n; ++i) {
            s += 2 * bit_at(i) - 1;
            z = std::max(z, std::abs(s));
        }
        if (z == 0) return 1.0;
        const double zn = static_cast<double>(z);
        const double rn = std::sqrt(static_cast<double>(n));
        const double nd = static_cast<double>(n);
        double sum1 = 0.0;
        const auto lo1 = static_cast<std::int64_t>(std::floor((-nd / zn + 1.0) / 4.0));
        const auto hi1 = static_cast<std::int64_t>(std::floor((nd / zn - 1.0) / 4.0));
        for (std::int64_t k = lo1; k <= hi1; ++k) {
            const double kk = static_cast<double>(k);
            sum1 += normal_cdf((4.0 * kk + 1.0) * zn / rn) -
                    normal_cdf((4.0 * kk - 1.0) * zn / rn);
        }
        double sum2 = 0.0;
        const auto lo2 = static_cast<std::int64_t>(std::floor((-nd / zn - 3.0) / 4.0));
        for (std::int64_t k = lo2; k <= hi1; ++k) {
            const double kk = static_cast<double>(k);
            sum2 += normal_cdf((4.0 * kk + 3.0) * zn / rn) -
                    normal_cdf((4.0 * kk + 1.0) * zn / rn);
        }
        return clamp_p(1.0 - sum1 + sum2);
    };

    const double fwd = one_mode([&bits](std::size_t i) { return bits.bit(i); });
    const std::size_t last = n - 1;
    const double bwd = one_mode([&bits, last](std::size_t i) { return bits.bit(last - i); });
    return {fwd, bwd};
}

std::optional<double> runs_p(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n < 2) throw std::invalid_argument("runs: need at least 2 bits");
    const double pi = static_cast<double>(bits.count_ones()) / static_cast<double>(n);
    if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
        return std::nullopt; // frequency prerequisite failed
    std::int64_t v = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) v += bits.bit(i) != bits.bit(i + 1);
    const double nd = static_cast<double>(n);
    const double num = std::abs(static_cast<double>(v) - 2.0 * nd * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi);
    return clamp_p(motrng::erfc(num / den));
}

double longest_run_p(const BitStream& bits, std::int64_t m) {
    struct Table {
        std::int64_t m;
        int k;
        int v_min; // runs <= v_min pool into the first category
        std::vector<double> pi;
    };
    static const Table tables[] = {
        {8, 3, 1, {0.2148, 0.3672, 0.2305, 0.1875}},
        {128, 5, 4, {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124}},
        {10000, 6, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}},
    };
    const Table* table = nullptr;
    for (const auto& t : tables)
        if (t.m == m) table = &t;
    if (!table) throw std::invalid_argument("longest_run: m must be 8, 128 or 10000");

    const std::size_t n = bits.size();
    const std::size_t blocks = n / static_cast<std::size_t>(m);
    if (blocks == 0) throw std::invalid_argument("longest_run: stream shorter than block");

    std::vector<std::int64_t> nu(static_cast<std::size_t>(table->k) + 1, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        int longest = 0, run = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
            if (bits.bit(b * static_cast<std::size_t>(m) + i)) {
                ++run;
                longest = std::max(longest, run);
            } else {
                run = 0;
            }
        }
        int cat = longest - table->v_min;
        cat = std::clamp(cat, 0, table->k);
        ++nu[static_cast<std::size_t>(cat)];
    }

    double chi2 = 0.0;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(table->k); ++i) {
        const double expect = static_cast<double>(blocks) * table->pi[i];
        const double diff = static_cast<double>(nu[i]) - expect;
        chi2 += diff * diff / expect;
    }
    return clamp_p(regularized_gamma_q(static_cast<double>(table->k) / 2.0, chi2 / 2.0));
}

double fft_p(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n < 2) throw std::invalid_argument("fft: need at least 2 bits");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 2.0 * bits.bit(i) - 1.0;
    const auto spectrum = dft(x);

    const double threshold = std::sqrt(static_cast<double>(n) * std::log(1.0 / 0.05));
    const std::size_t half = n / 2;
    std::size_t below = 0;
    for (std::size_t k = 0; k < half; ++k)
        below += std::abs(spectrum[k]) < threshold;

    const double n0 = 0.95 * static_cast<double>(half);
    const double d = (static_cast<double>(below) - n0) /
                     std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
    return clamp_p(motrng::erfc(std::abs(d) / std::sqrt(2.0)));
}

double nonoverlapping_template_p(const BitStream& bits, const BitStream& tmpl,
                                 std::int64_t n_blocks) {
    const std::size_t n = bits.size();
    const std::size_t m = tmpl.size();
    if (m == 0) throw std::invalid_argument("template: empty template");
    if (n_blocks < 1) throw std::invalid_argument("template: n_blocks must be >= 1");
    const std::size_t block = n / static_cast<std::size_t>(n_blocks);
    if (block < m) throw std::invalid_argument("template: template longer than block");

    const double md = static_cast<double>(m);
    const double bd = static_cast<double>(block);
    const double mean = (bd - md + 1.0) / std::ldexp(1.0, static_cast<int>(m));
    const double var = bd * (std::ldexp(1.0, -static_cast<int>(m)) -
                             (2.0 * md - 1.0) * std::ldexp(1.0, -2 * static_cast<int>(m)));

    double chi2 = 0.0;
    for (std::int64_t b = 0; b < n_blocks; ++b) {
        const std::size_t base = static_cast<std::size_t>(b) * block;
        std::int64_t w = 0;
        std::size_t i = 0;
        while (i + m <= block) {
            bool match = true;
            for (std::size_t j = 0; j < m; ++j)
                if (bits.bit(base + i + j) != tmpl.bit(j)) {
                    match = false;
                    break;
                }
            if (match) {
                ++w;
                i += m;
            } else {
                ++i;
            }
        }
        const double diff = static_cast<double>(w) - mean;
        chi2 += diff * diff / var;
    }
    return clamp_p(regularized_gamma_q(static_cast<double>(n_blocks) / 2.0, chi2 / 2.0));
}

std::pair<double, double> serial_p(const BitStream& bits, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("serial: m must be >= 1");
    const auto e = unpack(bits);
    const double psi_m = psi_squared(e, m);
    const double psi_m1 = psi_squared(e, m - 1);
    const double psi_m2 = psi_squared(e, m - 2);
    const double d1 = psi_m - psi_m1;
    const double d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    const double p1 = regularized_gamma_q(std::ldexp(1.0, static_cast<int>(m) - 2), d1 / 2.0);
    const double p2 = regularized_gamma_q(std::ldexp(1.0, static_cast<int>(m) - 3), d2 / 2.0);
    return {clamp_p(p1), clamp_p(p2)};
}

double approximate_entropy_p(const BitStream& bits, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("approximate_entropy: m must be >= 1");
    const auto e = unpack(bits);
    const double apen = phi_m(e, m) - phi_m(e, m + 1);
    const double chi2 = 2.0 * static_cast<double>(e.size()) * (std::log(2.0) - apen);
    return clamp_p(regularized_gamma_q(std::ldexp(1.0, static_cast<int>(m) - 1),
                                       std::max(chi2, 0.0) / 2.0));
}

ExcursionStats random_excursions_stats(const BitStream& bits) {
    const std::size_t n = bits.size();
    if (n == 0) throw std::invalid_argument("random_excursions: empty stream");

    // cycle decomposition of the +-1 walk; a cycle ends at every return to 0,
    // and the unfinished tail (if any) counts as one final cycle
    std::vector<std::int64_t> visit_total(19, 0);  // x in [-9, 9], index x+9
    std::int64_t visit_cycle[9] = {0};             // |x| in [-4..4] per cycle, index x+4
    std::int64_t nu[8][6] = {{0}};                 // [state][k 0..5+]
    std::int64_t cycles = 0;
    std::int64_t s = 0;
    bool in_cycle = false;

    auto close_cycle = [&]() {
        for (int x = -4; x <= 4; ++x) {
            if (x == 0) continue;
            const int si = x < 0 ? x + 4 : x + 3; // 0..7
            const auto k = std::min<std::int64_t>(visit_cycle[x + 4], 5);
            ++nu[si][k];
        }
        std::fill(std::begin(visit_cycle), std::end(visit_cycle), 0);
        ++cycles;
        in_cycle = false;
    };

    for (std::size_t i = 0; i < n; ++i) {
        s += 2 * bits.bit(i) - 1;
        in_cycle = true;
        if (s >= -9 && s <= 9 && s != 0) ++visit_total[static_cast<std::size_t>(s + 9)];
        if (s >= -4 && s <= 4 && s != 0) ++visit_cycle[s + 4];
        if (s == 0) close_cycle();
    }
    if (in_cycle) close_cycle();

    ExcursionStats out;
    out.cycles = cycles;
    const double j = static_cast<double>(cycles);

    for (int x = -4; x <= 4; ++x) {
        if (x == 0) continue;
        const int si = x < 0 ? x + 4 : x + 3;
        const double ax = std::abs(x);
        const double p_leave = 1.0 / (2.0 * ax);
        double pi[6];
        pi[0] = 1.0 - p_leave;
        for (int k = 1; k <= 4; ++k)
            pi[k] = 1.0 / (4.0 * ax * ax) * std::pow(1.0 - p_leave, k - 1);
        pi[5] = p_leave * std::pow(1.0 - p_leave, 4);
        double chi2 = 0.0;
        for (int k = 0; k < 6; ++k) {
            const double expect = j * pi[k];
            const double diff = static_cast<double>(nu[si][k]) - expect;
            chi2 += diff * diff / expect;
        }
        out.state_p.push_back(clamp_p(regularized_gamma_q(2.5, chi2 / 2.0)));
    }

    for (int x = -9; x <= 9; ++x) {
        if (x == 0) continue;
        const double xi = static_cast<double>(visit_total[static_cast<std::size_t>(x + 9)]);
        const double den = std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0));
        out.variant_p.push_back(clamp_p(motrng::erfc(std::abs(xi - j) / den)));
    }
    return out;
}

std::vector<BitStream> aperiodic_templates(int m) {
    if (m < 1 || m > 20) throw std::invalid_argument("templates: m out of range");
    std::vector<BitStream> out;
    const std::uint32_t top = 1u << m;
    for (std::uint32_t v = 0; v < top; ++v) {
        bool aperiodic = true;
        for (int j = 1; j < m && aperiodic; ++j) {
            // compare prefix of length m-j with suffix of length m-j
            const std::uint32_t mask = (1u << (m - j)) - 1;
            if (((v >> j) & mask) == (v & mask)) aperiodic = false;
        }
        if (!aperiodic) continue;
        BitStream t(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            t.set_bit(static_cast<std::size_t>(i), (v >> (m - 1 - i)) & 1);
        out.push_back(std::move(t));
    }
    return out;
}

// --- battery entries -----------------------------------------------------

bool TestReport::all_pass() const {
    for (const auto& e : entries)
        if (e.applicable && !e.pass) return false;
    return true;
}

TestEntry test_frequency(const BitStream& bits, const TestParams& params) {
    if (bits.size() < 100) return not_applicable("Frequency", "needs >= 100 bits");
    TestEntry e;
    e.name = "Frequency";
    e.p_values = {frequency_p(bits)};
    e.pass = e.p_values[0] >= params.significance;
    return e;
}

TestEntry test_block_frequency(const BitStream& bits, const TestParams& params) {
    const std::int64_t m =
        params.block_length_m > 0 ? params.block_length_m : auto_block_m(bits.size());
    if (bits.size() < 100 || bits.size() < static_cast<std::size_t>(m))
        return not_applicable("Block frequency", "needs >= 100 bits and one full block");
    TestEntry e;
    e.name = "Block frequency";
    e.p_values = {block_frequency_p(bits, m)};
    e.pass = e.p_values[0] >= params.significance;
    e.note = "M=" + std::to_string(m);
    return e;
}

TestEntry test_cumulative_sums(const BitStream& bits, const TestParams& params) {
    if (bits.size() < 100) return not_applicable("Cumulative sums", "needs >= 100 bits");
    TestEntry e;
    e.name = "Cumulative sums";
    const auto [fwd, bwd] = cumulative_sums_p(bits);
    e.p_values = {fwd, bwd};
    e.pass = fwd >= params.significance && bwd >= params.significance;
    return e;
}

TestEntry test_runs(const BitStream& bits, const TestParams& params) {
    if (bits.size() < 100) return not_applicable("Runs", "needs >= 100 bits");
    const auto p = runs_p(bits);
    if (!p)
        return not_applicable("Runs", "frequency prerequisite |pi-1/2| < 2/sqrt(n) failed");
    TestEntry e;
    e.name = "Runs";
    e.p_values = {*p};
    e.pass = *p >= params.significance;
    return e;
}

TestEntry test_longest_run(const BitStream& bits, const TestParams& params) {
    const std::size_t n = bits.size();
    std::int64_t m;
    if (n >= 750000) m = 10000;
    else if (n >= 6272) m = 128;
    else if (n >= 128) m = 8;
    else return not_applicable("Longest run", "needs >= 128 bits");
    TestEntry e;
    e.name = "Longest run";
    e.p_values = {longest_run_p(bits, m)};
    e.pass = e.p_values[0] >= params.significance;
    e.note = "M=" + std::to_string(m);
    return e;
}

TestEntry test_fft(const BitStream& bits, const TestParams& params) {
    if (bits.size() < 1000) return not_applicable("FFT", "needs >= 1000 bits");
    TestEntry e;
    e.name = "FFT";
    e.p_values = {fft_p(bits)};
    e.pass = e.p_values[0] >= params.significance;
    return e;
}

TestEntry test_nonoverlapping_template(const BitStream& bits, const TestParams& params) {
    const std::string name = "Non overlapping template";
    if (!params.template_bits.empty()) {
        const BitStream tmpl = BitStream::from_string(params.template_bits);
        if (bits.size() / 8 < tmpl.size())
            return not_applicable(name, "template longer than block");
        TestEntry e;
        e.name = name;
        e.p_values = {nonoverlapping_template_p(bits, tmpl)};
        e.pass = e.p_values[0] >= params.significance;
        e.note = "template=" + tmpl.to_string();
        return e;
    }

    const int m = 9;
    if (bits.size() / 8 < 2 * m)
        return not_applicable(name, "stream too short for length-9 templates");
    const auto templates = aperiodic_templates(m);
    TestEntry e;
    e.name = name;
    double min_p = 1.0;
    for (const auto& t : templates)
        min_p = std::min(min_p, e.detail_p_values.emplace_back(
                                    nonoverlapping_template_p(bits, t)));
    const double level = sidak_level(params.significance, templates.size());
    e.p_values = {min_p};
    e.pass = min_p >= level;
    std::ostringstream note;
    note << "min over " << templates.size()
         << " aperiodic 9-bit templates; family-corrected level " << level;
    e.note = note.str();
    return e;
}

TestEntry test_serial(const BitStream& bits, const TestParams& params) {
    const std::int64_t m =
        params.serial_m > 0 ? params.serial_m : auto_serial_m(bits.size());
    if (bits.size() < (1ull << (m + 3)))
        return not_applicable("Serial", "stream too short for m=" + std::to_string(m));
    TestEntry e;
    e.name = "Serial";
    const auto [p1, p2] = serial_p(bits, m);
    e.p_values = {p1, p2};
    e.pass = p1 >= params.significance && p2 >= params.significance;
    e.note = "m=" + std::to_string(m);
    return e;
}

TestEntry test_approximate_entropy(const BitStream& bits, const TestParams& params) {
    const std::int64_t m = params.apen_m > 0 ? params.apen_m : auto_apen_m(bits.size());
    if (bits.size() < (1ull << (m + 6)))
        return not_applicable("Approximate entropy",
                              "stream too short for m=" + std::to_string(m));
    TestEntry e;
    e.name = "Approximate entropy";
    e.p_values = {approximate_entropy_p(bits, m)};
    e.pass = e.p_values[0] >= params.significance;
    e.note = "m=" + std::to_string(m);
    return e;
}

namespace {

TestEntry excursions_entry(const std::string& name, const std::vector<double>& ps,
                           std::int64_t cycles, double alpha) {
    if (cycles < 500) {
        TestEntry e = not_applicable(
            name, "J=" + std::to_string(cycles) + " cycles < 500, statistic unreliable");
        return e;
    }
    TestEntry e;
    e.name = name;
    e.detail_p_values = ps;
    const double min_p = *std::min_element(ps.begin(), ps.end());
    const double level = sidak_level(alpha, ps.size());
    e.p_values = {min_p};
    e.pass = min_p >= level;
    std::ostringstream note;
    note << "min over " << ps.size() << " states (J=" << cycles
         << "); family-corrected level " << level;
    e.note = note.str();
    return e;
}

} // namespace

TestEntry test_random_excursions(const BitStream& bits, const TestParams& params) {
    const auto st = random_excursions_stats(bits);
    return excursions_entry("Random excursions", st.state_p, st.cycles,
                            params.significance);
}

TestEntry test_random_excursions_variant(const BitStream& bits, const TestParams& params) {
    const auto st = random_excursions_stats(bits);
    return excursions_entry("Random excursions variant", st.variant_p, st.cycles,
                            params.significance);
}

TestReport run_suite(const BitStream& bits, const TestParams& params) {
    if (bits.empty()) throw std::invalid_argument("run_suite: empty stream");
    TestReport report;
    report.significance = params.significance;
    report.entries = {
        test_approximate_entropy(bits, params),
        test_block_frequency(bits, params),
        test_cumulative_sums(bits, params),
        test_fft(bits, params),
        test_frequency(bits, params),
        test_longest_run(bits, params),
        test_nonoverlapping_template(bits, params),
        test_random_excursions(bits, params),
        test_random_excursions_variant(bits, params),
        test_runs(bits, params),
        test_serial(bits, params),
    };
    return report;
}

std::string render_table(const TestReport& report) {
    std::ostringstream out;
    out << "#   Name                        P-value           Success    Post-processing\n";
    int idx = 0;
    for (const auto& e : report.entries) {
        std::ostringstream pv;
        if (!e.applicable) {
            pv << "-";
        } else {
            pv.precision(3);
            for (std::size_t i = 0; i < e.p_values.size(); ++i) {
                if (i) pv << ", ";
                pv << e.p_values[i];
            }
        }
        char line[160];
        std::snprintf(line, sizeof line, "%02d  %-26s  %-16s  %-9s  No\n", ++idx,
                      e.name.c_str(), pv.str().c_str(),
                      e.applicable ? (e.pass ? "Success" : "Failure") : "-");
        out << line;
    }
    return out.str();
}

nlohmann::json report_to_json(const TestReport& report) {
    nlohmann::json doc;
    doc["significance"] = report.significance;
    doc["all_pass"] = report.all_pass();
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json j;
        j["test_name"] = e.name;
        j["p_values"] = e.p_values;
        if (!e.detail_p_values.empty()) j["detail_p_values"] = e.detail_p_values;
        j["pass"] = e.pass;
        j["applicable"] = e.applicable;
        j["note"] = e.note;
        entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

} // namespace nist
} // namespace motrng
