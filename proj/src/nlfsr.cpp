#include "motrng/nlfsr.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace motrng {

namespace {

// Shipped feedback functions, found by exhaustive/randomized offline search
// and locked in by the period tests: each has full period 2^n - 1 from seed
// 0..01. The 4-bit one keeps the catalog shape x0 ^ linear ^ one quadratic.
const std::map<int, const char*> kDefaultAnf = {
    {4, "width=4;anf=0,1,2,2*3"},
    {8, "width=8;anf=0,1,6,1*2"},
    {16, "width=16;anf=0,2,13,2*3"},
    {20, "width=20;anf=0,1,4,9,5*7*16,4*13*14"},
};

} // namespace

void NlfsrSpec::canonicalize() {
    for (auto& mono : feedback) {
        std::sort(mono.begin(), mono.end());
        mono.erase(std::unique(mono.begin(), mono.end()), mono.end());
    }
    std::sort(feedback.begin(), feedback.end());
    // XOR of identical monomials cancels pairwise
    std::vector<std::vector<int>> out;
    for (auto& mono : feedback) {
        if (!out.empty() && out.back() == mono) out.pop_back();
        else out.push_back(mono);
    }
    feedback = std::move(out);
}

void NlfsrSpec::validate() const {
    if (width_n < 3 || width_n > 32)
        throw std::invalid_argument("nlfsr: width must be in [3, 32]");
    if (feedback.empty())
        throw std::invalid_argument("nlfsr: feedback function is empty");
    for (const auto& mono : feedback) {
        if (mono.empty()) throw std::invalid_argument("nlfsr: empty monomial");
        for (int t : mono)
            if (t < 0 || t >= width_n)
                throw std::invalid_argument("nlfsr: tap index out of range");
    }
}

bool NlfsrSpec::feedback_bit(std::uint32_t reg) const {
    std::uint32_t f = 0;
    for (const auto& mono : feedback) {
        std::uint32_t term = 1;
        for (int t : mono) term &= (reg >> t) & 1u;
        f ^= term;
    }
    return f != 0;
}

std::string NlfsrSpec::serialize() const {
    std::ostringstream out;
    out << "width=" << width_n << ";anf=";
    for (std::size_t i = 0; i < feedback.size(); ++i) {
        if (i) out << ',';
        for (std::size_t j = 0; j < feedback[i].size(); ++j) {
            if (j) out << '*';
            out << feedback[i][j];
        }
    }
    if (include_zero_state) out << ";zero=1";
    return out.str();
}

NlfsrSpec NlfsrSpec::parse(const std::string& text) {
    NlfsrSpec spec;
    std::istringstream in(text);
    std::string field;
    bool have_width = false, have_anf = false;
    while (std::getline(in, field, ';')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("nlfsr: bad spec field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        if (key == "width") {
            spec.width_n = std::stoi(val);
            have_width = true;
        } else if (key == "anf") {
            std::istringstream monos(val);
            std::string mono;
            while (std::getline(monos, mono, ',')) {
                std::vector<int> taps;
                std::istringstream ts(mono);
                std::string tap;
                while (std::getline(ts, tap, '*')) taps.push_back(std::stoi(tap));
                spec.feedback.push_back(std::move(taps));
            }
            have_anf = true;
        } else if (key == "zero") {
            spec.include_zero_state = val == "1";
        } else {
            throw std::invalid_argument("nlfsr: unknown spec field '" + key + "'");
        }
    }
    if (!have_width || !have_anf)
        throw std::invalid_argument("nlfsr: spec needs width= and anf=");
    spec.canonicalize();
    spec.validate();
    return spec;
}

NlfsrSpec NlfsrSpec::default_spec(int width_n) {
    const auto it = kDefaultAnf.find(width_n);
    if (it == kDefaultAnf.end())
        throw std::invalid_argument("nlfsr: no default spec for width " +
                                    std::to_string(width_n));
    return parse(it->second);
}

int clock_bit(ExpanderState& state) {
    const int out = static_cast<int>(state.reg & 1u);
    const int n = state.spec.width_n;
    if (state.spec.include_zero_state) {
        // splice the zero state into the cycle immediately after 0..01
        if (state.reg == 1u) {
            state.reg = 0;
            return out;
        }
        if (state.reg == 0u) {
            // resume where the unspliced cycle would have gone from 0..01
            state.reg = state.spec.feedback_bit(1u) ? (1u << (n - 1)) : 0u;
            return out;
        }
    }
    const std::uint32_t fb = state.spec.feedback_bit(state.reg) ? 1u : 0u;
    state.reg = (state.reg >> 1) | (fb << (n - 1));
    return out;
}

PeriodInfo period(const NlfsrSpec& spec) {
    spec.validate();
    if (spec.width_n > 24)
        throw std::invalid_argument("period: exhaustive walk limited to width <= 24");
    ExpanderState st;
    st.spec = spec;
    st.reg = 1u;
    const std::uint64_t limit = 1ull << spec.width_n;
    std::uint64_t count = 0;
    do {
        clock_bit(st);
        ++count;
        if (count > limit) break;
    } while (st.reg != 1u);

    PeriodInfo info;
    info.period = count;
    const std::uint64_t full =
        spec.include_zero_state ? limit : limit - 1;
    info.full_cycle = count == full;
    return info;
}

BitStream expand(const BitStream& seed_bits, const NlfsrSpec& spec,
                 std::int64_t reseed_interval, std::int64_t n_out,
                 std::int64_t* zero_chunks_replaced) {
    spec.validate();
    if (reseed_interval < 1)
        throw std::invalid_argument("expand: reseed_interval must be >= 1");
    if (n_out < 0) throw std::invalid_argument("expand: n_out must be >= 0");

    const int w = spec.width_n;
    const std::int64_t epochs = n_out == 0 ? 0 : (n_out + reseed_interval - 1) / reseed_interval;
    if (static_cast<std::int64_t>(seed_bits.size()) < epochs * w)
        throw std::runtime_error(
            "expand: seed stream exhausted (need " + std::to_string(epochs * w) +
            " bits, have " + std::to_string(seed_bits.size()) + ")");

    // compiled feedback: linear taps fold into one popcount mask, each
    // higher-order monomial becomes an all-bits-set test
    std::uint32_t linear_mask = 0;
    std::vector<std::uint32_t> product_masks;
    for (const auto& mono : spec.feedback) {
        if (mono.size() == 1) {
            linear_mask ^= 1u << mono[0];
        } else {
            std::uint32_t m = 0;
            for (int t : mono) m |= 1u << t;
            product_masks.push_back(m);
        }
    }
    const std::uint32_t high_bit = 1u << (w - 1);
    const bool zero_ok = spec.include_zero_state;
    const std::uint32_t after_one = spec.feedback_bit(1u) ? high_bit : 0u;

    BitStream out(static_cast<std::size_t>(n_out));
    std::int64_t produced = 0;
    std::size_t seed_pos = 0;
    std::int64_t zero_chunks = 0;
    std::uint32_t reg = 0;
    while (produced < n_out) {
        reg = 0;
        for (int i = 0; i < w; ++i)
            reg = (reg << 1) | static_cast<std::uint32_t>(seed_bits.bit(seed_pos++));
        if (reg == 0 && !zero_ok) {
            reg = 1u; // dead state: fall back to the canonical seed
            ++zero_chunks;
        }
        const std::int64_t chunk = std::min(reseed_interval, n_out - produced);
        for (std::int64_t i = 0; i < chunk; ++i) {
            if (reg & 1u) out.set_bit(static_cast<std::size_t>(produced), 1);
            ++produced;
            if (zero_ok && reg == 1u) {
                reg = 0;
                continue;
            }
            if (zero_ok && reg == 0u) {
                reg = after_one;
                continue;
            }
            std::uint32_t f = static_cast<std::uint32_t>(std::popcount(reg & linear_mask)) & 1u;
            for (std::uint32_t m : product_masks) f ^= (reg & m) == m;
            reg = (reg >> 1) | (f << (w - 1));
        }
    }
    if (zero_chunks_replaced) *zero_chunks_replaced = zero_chunks;
    return out;
}

void write_bitmap_p1(const std::string& path, const BitStream& bits,
                     std::size_t side, const std::string& comment) {
    if (bits.size() < side * side)
        throw std::invalid_argument("bitmap: need at least side^2 bits");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("bitmap: cannot open " + path);
    f << "P1\n";
    if (!comment.empty()) f << "# " << comment << "\n";
    f << side << " " << side << "\n";
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            if (c) f << ' ';
            f << bits.bit(r * side + c);
        }
        f << '\n';
    }
    if (!f) throw std::runtime_error("bitmap: write failed: " + path);
}

} // namespace motrng
