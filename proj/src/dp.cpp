#include "motrng/dp.hpp"

#include <limits>
#include <stdexcept>

namespace motrng {

void PerturbConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("dp: epsilon must be > 0");
    if (!(sensitivity_delta > 0.0))
        throw std::invalid_argument("dp: sensitivity_delta must be > 0");
}

double laplace_noise(double scale_b, EntropyPool& pool) {
    const double u = pool.take_centered_uniform();
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -scale_b * sign * std::log1p(-2.0 * std::abs(u));
}

Image dp_perturb(const Image& image, const PerturbConfig& cfg, EntropyPool& pool) {
    cfg.validate();
    const double b = cfg.sensitivity_delta / cfg.epsilon;
    Image out = image;
    for (auto& px : out.pixels) {
        px += laplace_noise(b, pool);
        if (cfg.clip) px = std::clamp(px, 0.0, 1.0);
    }
    return out;
}

PerturbReport perturbation_report(const Image& original, const Image& perturbed) {
    if (original.pixels.size() != perturbed.pixels.size() ||
        original.width != perturbed.width || original.height != perturbed.height)
        throw std::invalid_argument("perturbation_report: image shapes differ");
    if (original.pixels.empty())
        throw std::invalid_argument("perturbation_report: empty images");

    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t i = 0; i < original.pixels.size(); ++i) {
        const double d = perturbed.pixels[i] - original.pixels[i];
        abs_sum += std::abs(d);
        sq_sum += d * d;
    }
    const double n = static_cast<double>(original.pixels.size());
    PerturbReport rep;
    rep.mae = abs_sum / n;
    const double mse = sq_sum / n;
    rep.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity()
                          : 10.0 * std::log10(1.0 / mse);
    return rep;
}

} // namespace motrng
