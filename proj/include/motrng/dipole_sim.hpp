#pragma once
#include <cstdint>
#include <vector>

#include "motrng/config.hpp"
#include "motrng/rng.hpp"

namespace motrng {

/// Boltzmann constant in eV/K, fixed to the CODATA value used everywhere
/// in this project.
inline constexpr double kBoltzmannEv = 8.617333262e-5;

enum class CouplingMode { Ohmic, PooleFrenkel };

/// Parameters of the two-state dipole ensemble and its readout circuit.
///
/// The electrical quantities live in a coherent model-unit system:
/// polarization is dimensionless with p_low/p_high = -1/+1 by default, the
/// bound charge starts at rho_init = 1 and r0 is chosen so that the default
/// operating point sits at R = 5e4 ohm. With bias_V = 0.05 V that yields a
/// mean current of ~1 uA and ~0.05 uW drawn from the device, the
/// "paper-power" calibration.
struct SimParams {
    std::int64_t n_dipoles = 50000;
    double prefactor_A = 3400.0;   // attempt rate, Hz
    double barrier_E = 0.2;        // eV
    double temperature_T = 300.0;  // K
    double bias_V = 0.05;          // V
    double r0 = 5.0e4;             // ohm * model charge density
    double length_L = 0.2;         // model length scale
    double p_low = -1.0;           // polarization of state P1
    double p_high = 1.0;           // polarization of state P2
    double dt = 0.067;             // s per step
    std::int64_t n_steps = 100000;
    std::uint64_t seed = 1;
    CouplingMode coupling_mode = CouplingMode::Ohmic;
    double j0 = 1.0e-2;            // A/m^2 at zero field (Poole-Frenkel)
    double beta = 1.0e-3;          // (m/V)^(1/2)
    double rho_floor = 1.0e-6;     // minimum |rho_B| used in division
    double rho_init = 1.0;         // bound charge at t = 0
    double eps_init = 1.0e6;       // field at t = 0 (Poole-Frenkel mode)
    double pf_area = 1.0;          // conduction area (Poole-Frenkel mode)

    /// Throws std::invalid_argument if any invariant fails, including the
    /// small-interval Poisson validity bound lambda*dt <= 0.1.
    void validate() const;

    static SimParams from_config(const Config& cfg);
    void to_config(Config& cfg) const;

    bool operator==(const SimParams&) const = default;
};

/// Per-dipole two-state lattice. states[i] is 0 for P1, 1 for P2.
struct DipoleState {
    std::vector<std::uint8_t> states;
    std::int64_t step_index = 0;
};

struct CurrentTrace {
    double dt = 0.0;
    std::vector<double> samples; // A
    SimParams meta;
};

struct ChargeTrace {
    double window = 0.0;         // s, integer multiple of the source dt
    std::vector<double> values;  // C, one integrated charge per window
};

/// Arrhenius switching rate: A * exp(-E / (k * T)).
double switching_rate(const SimParams& params);

/// Exact per-step flip probability 1 - exp(-lambda*dt).
double flip_probability(const SimParams& params);

/// Initial ensemble: each dipole set to P1/P2 with probability 1/2,
/// consuming exactly n_dipoles draws from the generator.
DipoleState init_state(const SimParams& params, SplitMix64& rng);

/// One Monte Carlo step. Every dipole independently flips with probability
/// 1 - exp(-lambda*dt); exactly n_dipoles draws are consumed, in dipole
/// order. Returns the net change in the number of dipoles in state P2.
std::int64_t step(DipoleState& state, const SimParams& params, SplitMix64& rng);

/// Ensemble polarization (count(P2)*p_high + count(P1)*p_low) / n_dipoles.
double net_polarization(const DipoleState& state, const SimParams& params);

/// Bound-charge change for a polarization change: -dP / L.
double bound_charge_delta(double delta_p, const SimParams& params);

/// R = r0 / max(|rho_B|, rho_floor); positive and finite for every input.
double resistance(double rho_b, const SimParams& params);

/// Poole-Frenkel current density J0 * exp(beta * sqrt(eps)).
/// Negative fields are a domain error.
double pf_current_density(double eps_field, const SimParams& params);

/// Full run: n_steps of step(), bound charge integrated from rho_init,
/// current through Ohm's law (or the Poole-Frenkel coupling). A pure
/// function of params, bit-for-bit reproducible for a fixed seed.
CurrentTrace simulate(const SimParams& params);

/// Per-window integrated charge Q_n = sum(I_k * dt) over each window.
/// The window must be a whole multiple of dt; a trailing partial window
/// is discarded.
ChargeTrace integrate_charge(const CurrentTrace& trace, double window);

} // namespace motrng
