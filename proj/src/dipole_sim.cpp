#include "motrng/dipole_sim.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

namespace motrng {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("sim params: ") + what);
}

std::uint64_t probability_threshold(double p) {
    // flip iff draw < p * 2^64, rounded to nearest representable threshold
    if (p <= 0.0) return 0;
    const double scaled = std::ldexp(p, 64);
    if (scaled >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(scaled);
}

// Applies one step's flip decisions for all dipoles. Draw i (0-based) is
// SplitMix64::mix(base + (i+1)*gamma), exactly the value a sequential
// rng.next() loop would produce; the loop body is data-parallel so the
// compiler can vectorize it per target. Returns the net change in count(P2).
__attribute__((target_clones("avx512f", "avx2", "default")))
std::int64_t flip_kernel(std::uint64_t base, std::uint8_t* states,
                         std::int64_t n, std::uint64_t threshold) {
    std::int64_t delta = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t draw = SplitMix64::mix(base + (static_cast<std::uint64_t>(i) + 1) * SplitMix64::kGamma);
        const std::uint8_t flip = draw < threshold;
        const std::uint8_t old = states[i];
        states[i] = old ^ flip;
        delta += static_cast<std::int64_t>(flip) * (1 - 2 * static_cast<std::int64_t>(old));
    }
    return delta;
}

} // namespace

void SimParams::validate() const {
    require(n_dipoles >= 1, "n_dipoles must be >= 1");
    require(prefactor_A >= 0.0, "prefactor_A must be >= 0");
    require(barrier_E >= 0.0, "barrier_E must be >= 0");
    require(temperature_T > 0.0, "temperature_T must be > 0");
    require(dt > 0.0, "dt must be > 0");
    require(n_steps >= 1, "n_steps must be >= 1");
    require(p_low < p_high, "p_low must be < p_high");
    require(rho_floor > 0.0, "rho_floor must be > 0");
    require(length_L > 0.0, "length_L must be > 0");
    require(r0 > 0.0, "r0 must be > 0");
    require(std::isfinite(bias_V), "bias_V must be finite");
    const double lam_dt = switching_rate(*this) * dt;
    require(lam_dt <= 0.1, "lambda*dt must be <= 0.1 (small-interval Poisson validity)");
    if (coupling_mode == CouplingMode::PooleFrenkel) {
        require(j0 >= 0.0, "j0 must be >= 0");
        require(eps_init >= 0.0, "eps_init must be >= 0");
        require(pf_area > 0.0, "pf_area must be > 0");
    }
}

double switching_rate(const SimParams& params) {
    return params.prefactor_A *
           std::exp(-params.barrier_E / (kBoltzmannEv * params.temperature_T));
}

double flip_probability(const SimParams& params) {
    return -std::expm1(-switching_rate(params) * params.dt);
}

DipoleState init_state(const SimParams& params, SplitMix64& rng) {
    DipoleState st;
    st.states.resize(static_cast<std::size_t>(params.n_dipoles));
    for (auto& s : st.states) s = static_cast<std::uint8_t>(rng.next() >> 63);
    st.step_index = 0;
    return st;
}

std::int64_t step(DipoleState& state, const SimParams& params, SplitMix64& rng) {
    const std::uint64_t threshold = probability_threshold(flip_probability(params));
    const std::int64_t delta =
        flip_kernel(rng.state(), state.states.data(),
                    static_cast<std::int64_t>(state.states.size()), threshold);
    rng.discard(state.states.size());
    ++state.step_index;
    return delta;
}

double net_polarization(const DipoleState& state, const SimParams& params) {
    std::int64_t count2 = 0;
    for (std::uint8_t s : state.states) count2 += s;
    const std::int64_t n = static_cast<std::int64_t>(state.states.size());
    return (static_cast<double>(count2) * params.p_high +
            static_cast<double>(n - count2) * params.p_low) /
           static_cast<double>(n);
}

double bound_charge_delta(double delta_p, const SimParams& params) {
    return -delta_p / params.length_L;
}

double resistance(double rho_b, const SimParams& params) {
    return params.r0 / std::max(std::abs(rho_b), params.rho_floor);
}

double pf_current_density(double eps_field, const SimParams& params) {
    if (eps_field < 0.0)
        throw std::domain_error("pf_current_density: negative field");
    return params.j0 * std::exp(params.beta * std::sqrt(eps_field));
}

CurrentTrace simulate(const SimParams& params) {
    params.validate();

    SplitMix64 rng(params.seed);
    DipoleState st = init_state(params, rng);

    const std::int64_t n = params.n_dipoles;
    std::int64_t count2 = 0;
    for (std::uint8_t s : st.states) count2 += s;

    const std::uint64_t threshold = probability_threshold(flip_probability(params));
    const double inv_n = 1.0 / static_cast<double>(n);
    auto polarization = [&](std::int64_t c2) {
        return (static_cast<double>(c2) * params.p_high +
                static_cast<double>(n - c2) * params.p_low) * inv_n;
    };

    double p_prev = polarization(count2);
    double rho_b = params.rho_init;
    double eps = params.eps_init;

    CurrentTrace trace;
    trace.dt = params.dt;
    trace.meta = params;
    trace.samples.resize(static_cast<std::size_t>(params.n_steps));

    for (std::int64_t s = 0; s < params.n_steps; ++s) {
        count2 += flip_kernel(rng.state(), st.states.data(), n, threshold);
        rng.discard(static_cast<std::uint64_t>(n));
        ++st.step_index;

        const double p = polarization(count2);
        const double dp = p - p_prev;
        p_prev = p;
        rho_b += bound_charge_delta(dp, params);

        double current;
        if (params.coupling_mode == CouplingMode::Ohmic) {
            current = params.bias_V / resistance(rho_b, params);
        } else {
            eps += dp; // delta_rho = -dP/L and delta_rho = -d_eps/L => d_eps = dP
            current = params.pf_area * pf_current_density(eps, params);
        }
        trace.samples[static_cast<std::size_t>(s)] = current;
    }
    return trace;
}

ChargeTrace integrate_charge(const CurrentTrace& trace, double window) {
    if (trace.dt <= 0.0) throw std::invalid_argument("integrate_charge: trace has no dt");
    if (window < trace.dt)
        throw std::invalid_argument("integrate_charge: window smaller than dt");
    const double ratio = window / trace.dt;
    const auto k = static_cast<std::int64_t>(std::llround(ratio));
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("integrate_charge: window must be an integer multiple of dt");

    ChargeTrace out;
    out.window = window;
    const std::size_t n_windows = trace.samples.size() / static_cast<std::size_t>(k);
    out.values.resize(n_windows);
    for (std::size_t w = 0; w < n_windows; ++w) {
        double q = 0.0;
        const std::size_t begin = w * static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
            q += trace.samples[begin + i] * trace.dt;
        out.values[w] = q;
    }
    return out;
}

SimParams SimParams::from_config(const Config& cfg) {
    SimParams p;
    p.n_dipoles     = cfg.get_int("sim.n_dipoles", p.n_dipoles);
    p.prefactor_A   = cfg.get_double("sim.prefactor_a", p.prefactor_A);
    p.barrier_E     = cfg.get_double("sim.barrier_e", p.barrier_E);
    p.temperature_T = cfg.get_double("sim.temperature_t", p.temperature_T);
    p.bias_V        = cfg.get_double("sim.bias_v", p.bias_V);
    p.r0            = cfg.get_double("sim.r0", p.r0);
    p.length_L      = cfg.get_double("sim.length_l", p.length_L);
    p.p_low         = cfg.get_double("sim.p_low", p.p_low);
    p.p_high        = cfg.get_double("sim.p_high", p.p_high);
    p.dt            = cfg.get_double("sim.dt", p.dt);
    p.n_steps       = cfg.get_int("sim.n_steps", p.n_steps);
    p.seed          = cfg.get_uint64("sim.seed", p.seed);
    const std::string mode = cfg.get_string("sim.coupling_mode", "ohmic");
    if (mode == "ohmic") p.coupling_mode = CouplingMode::Ohmic;
    else if (mode == "poole_frenkel") p.coupling_mode = CouplingMode::PooleFrenkel;
    else throw std::invalid_argument("config: sim.coupling_mode must be ohmic or poole_frenkel");
    p.j0        = cfg.get_double("sim.j0", p.j0);
    p.beta      = cfg.get_double("sim.beta", p.beta);
    p.rho_floor = cfg.get_double("sim.rho_floor", p.rho_floor);
    p.rho_init  = cfg.get_double("sim.rho_init", p.rho_init);
    p.eps_init  = cfg.get_double("sim.eps_init", p.eps_init);
    p.pf_area   = cfg.get_double("sim.pf_area", p.pf_area);
    p.validate();
    return p;
}

void SimParams::to_config(Config& cfg) const {
    auto putd = [&cfg](const char* k, double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        cfg.set(k, buf);
    };
    cfg.set("sim.n_dipoles", std::to_string(n_dipoles));
    putd("sim.prefactor_a", prefactor_A);
    putd("sim.barrier_e", barrier_E);
    putd("sim.temperature_t", temperature_T);
    putd("sim.bias_v", bias_V);
    putd("sim.r0", r0);
    putd("sim.length_l", length_L);
    putd("sim.p_low", p_low);
    putd("sim.p_high", p_high);
    putd("sim.dt", dt);
    cfg.set("sim.n_steps", std::to_string(n_steps));
    cfg.set("sim.seed", std::to_string(seed));
    cfg.set("sim.coupling_mode",
            coupling_mode == CouplingMode::Ohmic ? "ohmic" : "poole_frenkel");
    putd("sim.j0", j0);
    putd("sim.beta", beta);
    putd("sim.rho_floor", rho_floor);
    putd("sim.rho_init", rho_init);
    putd("sim.eps_init", eps_init);
    putd("sim.pf_area", pf_area);
}

} // namespace motrng
