#pragma once
#include <cstdint>
#include <tuple>

#include "motrng/bitstream.hpp"
#include "motrng/config.hpp"
#include "motrng/dipole_sim.hpp"

namespace motrng {

/// Front-end settings for turning a current trace into raw bits.
///
/// threshold_theta is optional: when threshold_auto is set (the default) the
/// comparator threshold is the median of the first 10% of the filtered
/// samples, which self-centers the bit balance. cutoff_fc defaults to
/// 1/(20*dt) of whatever trace the chain is applied to.
struct ChainConfig {
    double gain_g = 1.0e6;        // V/A
    double cutoff_fc = 0.0;       // Hz; 0 means 1/(20*dt)
    double threshold_theta = 0.0; // V, used when threshold_auto is false
    bool threshold_auto = true;
    double hysteresis_h = 0.0;    // V, >= 0
    std::int64_t sample_decimation = 1;

    void validate(double dt) const;

    static ChainConfig from_config(const Config& cfg);
    void to_config(Config& cfg) const;
};

enum class StageTag { Converted, Filtered };

struct VoltageTrace {
    double dt = 0.0;
    std::vector<double> samples; // V
    StageTag stage_tag = StageTag::Converted;
};

/// Transimpedance stage: v[n] = gain_g * i[n].
VoltageTrace iv_convert(const CurrentTrace& trace, const ChainConfig& cfg);

/// First-order recursive high-pass:
///   y[n] = a * (y[n-1] + x[n] - x[n-1]),  a = 1/(1 + 2*pi*fc*dt),  y[0] = 0.
/// Rejects DC exactly: a constant input produces an all-zero output.
VoltageTrace high_pass(const VoltageTrace& trace, const ChainConfig& cfg);

/// Schmitt comparator: output state goes 1 above theta+h, 0 below theta-h,
/// holds inside the dead band (initial state 0). One bit is emitted every
/// sample_decimation filtered samples (the state at the emission instant).
BitStream comparator(const VoltageTrace& trace, const ChainConfig& cfg);

/// Resolved threshold for a filtered trace: the configured theta, or the
/// median of the first 10% of samples when threshold_auto is set.
double comparator_threshold(const VoltageTrace& filtered, const ChainConfig& cfg);

struct ChainOutput {
    VoltageTrace converted; // port 1
    VoltageTrace filtered;  // port 2
    BitStream bits;         // port 3
};

ChainOutput run_chain(const CurrentTrace& trace, const ChainConfig& cfg);

} // namespace motrng
