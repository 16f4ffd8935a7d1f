#pragma once
#include <cmath>

#include "motrng/crypto.hpp"
#include "motrng/pnm.hpp"

namespace motrng {

struct PerturbConfig {
    double epsilon = 1.0;           // privacy parameter, > 0
    double sensitivity_delta = 1.0; // per-pixel sensitivity
    bool clip = true;               // clamp perturbed pixels to [0, 1]

    void validate() const;
};

/// One Laplace(0, delta/epsilon) deviate by inverse CDF from a 53-bit
/// centered uniform: noise = -b * sgn(u) * ln(1 - 2|u|).
double laplace_noise(double scale_b, EntropyPool& pool);

/// Adds independent per-pixel Laplace noise of scale delta/epsilon;
/// consumes exactly 53 pool bits per pixel.
Image dp_perturb(const Image& image, const PerturbConfig& cfg, EntropyPool& pool);

struct PerturbReport {
    double mae = 0.0;
    double psnr = 0.0; // dB against peak 1.0; +inf for identical images
};

PerturbReport perturbation_report(const Image& original, const Image& perturbed);

} // namespace motrng
