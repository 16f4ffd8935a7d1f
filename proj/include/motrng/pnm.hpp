#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace motrng {

/// H x W x C intensities in [0, 1], row-major, channel-interleaved.
struct Image {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 1; // 1 (gray) or 3 (rgb)
    std::vector<double> pixels;

    double& at(std::size_t r, std::size_t c, std::size_t ch = 0) {
        return pixels[(r * width + c) * channels + ch];
    }
    double at(std::size_t r, std::size_t c, std::size_t ch = 0) const {
        return pixels[(r * width + c) * channels + ch];
    }
};

/// Reads P2/P3 (ASCII) and P5/P6 (binary) portable gray/pixmaps with
/// maxval <= 255; intensities are normalized by maxval.
Image read_pnm(const std::string& path);

/// Writes P5 (gray) or P6 (rgb) at maxval 255; `ascii` selects P2/P3.
void write_pnm(const std::string& path, const Image& img, bool ascii = false);

} // namespace motrng
