#pragma once
#include "motrng/dipole_sim.hpp"
#include "motrng/signal_chain.hpp"

namespace motrng {

struct Preset {
    SimParams sim;
    ChainConfig chain;
};

/// Named run configurations:
///   paper-power  - the default: 5e4 dipoles sampled at 0.067 s, calibrated
///                  so the Ohmic operating point draws ~1 uA at 0.05 V
///                  (~0.05 uW); also the trace used by the statistical
///                  analyses.
///   bitrate      - small, fast ensemble with heavier decimation for bulk
///                  bit generation; one output bit per 32 simulated samples.
Preset preset(const std::string& name);

} // namespace motrng
