#include "motrng/presets.hpp"

#include <stdexcept>

namespace motrng {

Preset preset(const std::string& name) {
    Preset p; // SimParams/ChainConfig defaults are the paper-power calibration
    if (name == "paper-power" || name == "default") {
        return p;
    }
    if (name == "bitrate") {
        p.sim.n_dipoles = 128;
        p.sim.length_L = 0.5;
        p.sim.n_steps = 32000000; // 1e6 bits at decimation 32
        p.chain.cutoff_fc = 0.45 / p.sim.dt;
        p.chain.sample_decimation = 32;
        return p;
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected paper-power or bitrate)");
}

} // namespace motrng
