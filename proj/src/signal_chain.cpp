#include "motrng/signal_chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace motrng {

void ChainConfig::validate(double dt) const {
    if (gain_g <= 0.0) throw std::invalid_argument("chain: gain_g must be > 0");
    if (hysteresis_h < 0.0) throw std::invalid_argument("chain: hysteresis_h must be >= 0");
    if (sample_decimation < 1)
        throw std::invalid_argument("chain: sample_decimation must be >= 1");
    const double fc = cutoff_fc > 0.0 ? cutoff_fc : 1.0 / (20.0 * dt);
    if (fc <= 0.0 || fc >= 0.5 / dt)
        throw std::invalid_argument("chain: cutoff_fc must lie in (0, 1/(2*dt))");
}

VoltageTrace iv_convert(const CurrentTrace& trace, const ChainConfig& cfg) {
    cfg.validate(trace.dt);
    VoltageTrace out;
    out.dt = trace.dt;
    out.stage_tag = StageTag::Converted;
    out.samples.resize(trace.samples.size());
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        out.samples[i] = cfg.gain_g * trace.samples[i];
    return out;
}

VoltageTrace high_pass(const VoltageTrace& trace, const ChainConfig& cfg) {
    if (trace.stage_tag != StageTag::Converted)
        throw std::invalid_argument("high_pass: input must be the converted stage");
    cfg.validate(trace.dt);
    const double fc = cfg.cutoff_fc > 0.0 ? cfg.cutoff_fc : 1.0 / (20.0 * trace.dt);
    const double a = 1.0 / (1.0 + 2.0 * std::numbers::pi * fc * trace.dt);

    VoltageTrace out;
    out.dt = trace.dt;
    out.stage_tag = StageTag::Filtered;
    out.samples.resize(trace.samples.size());
    if (trace.samples.empty()) return out;
    out.samples[0] = 0.0;
    for (std::size_t n = 1; n < trace.samples.size(); ++n)
        out.samples[n] = a * (out.samples[n - 1] + trace.samples[n] - trace.samples[n - 1]);
    return out;
}

double comparator_threshold(const VoltageTrace& filtered, const ChainConfig& cfg) {
    if (!cfg.threshold_auto) return cfg.threshold_theta;
    if (filtered.samples.empty())
        throw std::invalid_argument("comparator: empty trace has no median threshold");
    const std::size_t n_cal = std::max<std::size_t>(1, filtered.samples.size() / 10);
    std::vector<double> cal(filtered.samples.begin(),
                            filtered.samples.begin() + static_cast<std::ptrdiff_t>(n_cal));
    const std::size_t mid = cal.size() / 2;
    std::nth_element(cal.begin(), cal.begin() + static_cast<std::ptrdiff_t>(mid), cal.end());
    double med = cal[mid];
    if (cal.size() % 2 == 0) {
        const double lo = *std::max_element(
            cal.begin(), cal.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (lo + med);
    }
    return med;
}

BitStream comparator(const VoltageTrace& trace, const ChainConfig& cfg) {
    if (trace.stage_tag != StageTag::Filtered)
        throw std::invalid_argument("comparator: input must be the filtered stage");
    cfg.validate(trace.dt);
    const double theta = comparator_threshold(trace, cfg);
    const double hi = theta + cfg.hysteresis_h;
    const double lo = theta - cfg.hysteresis_h;

    const std::size_t k = static_cast<std::size_t>(cfg.sample_decimation);
    BitStream bits(trace.samples.size() / k);
    int state = 0;
    std::size_t out = 0;
    for (std::size_t n = 0; n < trace.samples.size(); ++n) {
        const double v = trace.samples[n];
        if (v > hi) state = 1;
        else if (v < lo) state = 0;
        if ((n + 1) % k == 0) {
            if (state) bits.set_bit(out, 1);
            ++out;
        }
    }
    return bits;
}

ChainOutput run_chain(const CurrentTrace& trace, const ChainConfig& cfg) {
    ChainOutput out;
    out.converted = iv_convert(trace, cfg);
    out.filtered = high_pass(out.converted, cfg);
    out.bits = comparator(out.filtered, cfg);
    return out;
}

ChainConfig ChainConfig::from_config(const Config& cfg) {
    ChainConfig c;
    c.gain_g = cfg.get_double("chain.gain_g", c.gain_g);
    c.cutoff_fc = cfg.get_double("chain.cutoff_fc", c.cutoff_fc);
    if (cfg.has("chain.threshold_theta")) {
        c.threshold_theta = cfg.get_double("chain.threshold_theta", 0.0);
        c.threshold_auto = false;
    }
    c.hysteresis_h = cfg.get_double("chain.hysteresis_h", c.hysteresis_h);
    c.sample_decimation = cfg.get_int("chain.sample_decimation", c.sample_decimation);
    return c;
}

void ChainConfig::to_config(Config& cfg) const {
    auto putd = [&cfg](const char* k, double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        cfg.set(k, buf);
    };
    putd("chain.gain_g", gain_g);
    putd("chain.cutoff_fc", cutoff_fc);
    if (!threshold_auto) putd("chain.threshold_theta", threshold_theta);
    putd("chain.hysteresis_h", hysteresis_h);
    cfg.set("chain.sample_decimation", std::to_string(sample_decimation));
}

} // namespace motrng
