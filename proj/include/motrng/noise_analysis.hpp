#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "motrng/bitstream.hpp"
#include "motrng/dipole_sim.hpp"

namespace motrng {

/// Per-step gradients s_n = (x_{n+1} - x_n) / dt.
struct SlopeSeries {
    double dt = 0.0;
    std::vector<double> values;
};

struct Histogram {
    std::vector<double> bin_edges; // strictly ascending, size = counts.size()+1
    std::vector<std::int64_t> counts;
};

struct GaussianFit {
    double mu = 0.0;
    double sigma = 0.0;
    double amplitude = 0.0;
    double r_squared = 0.0;
};

/// Weighted time-lag density over consecutive charge pairs (Q_n, Q_{n+1}),
/// log10-scaled and normalized so the grid maximum is 0.
struct TLGrid {
    std::size_t grid_size = 0;
    std::vector<double> x_edges; // grid_size + 1
    std::vector<double> y_edges;
    std::vector<double> values;  // row-major [iy * grid_size + ix], all <= 0
    double alpha = 0.0;          // kernel width, same units as Q
    double k_norm = 0.0;         // 1 / max pre-log density

    double at(std::size_t ix, std::size_t iy) const {
        return values[iy * grid_size + ix];
    }
};

struct BitBalance {
    double ones_fraction = 0.0;
    double zeros_fraction = 0.0;
    std::size_t n_bits = 0;
};

SlopeSeries slope_series(const std::vector<double>& samples, double dt);

/// Freedman-Diaconis binning by default (n_bins = 0); pass n_bins to
/// override. Collapses to a single unit-width bin if all values coincide.
Histogram histogram(const std::vector<double>& values, std::size_t n_bins = 0);

/// Nonlinear least squares of A*exp(-(x-mu)^2/(2 sigma^2)) against bin
/// centers and counts (Levenberg-Marquardt, moment-initialized). Requires
/// at least 5 non-empty bins and more than one occupied bin.
GaussianFit gaussian_fit(const Histogram& hist);

/// Kernel density of consecutive charge pairs on a grid_size^2 grid
/// spanning [min Q - 3a, max Q + 3a]. alpha = 0 selects 2% of the Q range.
/// Cells the kernel never reaches are floored at density 1e-300, so their
/// TL value is finite but far below any populated cell.
TLGrid time_lag(const ChargeTrace& charge, std::size_t grid_size = 256,
                double alpha = 0.0);

BitBalance bit_balance(const BitStream& bits);

/// CSV matrix (TL values clipped at -12 for display) plus `<path>.meta.json`
/// recording edges, alpha and the normalization constant.
void write_tl_grid(const std::string& path, const TLGrid& grid);

/// JSON document with bin_edges, counts, mu, sigma, amplitude, r_squared.
void write_histogram_fit(const std::string& path, const Histogram& hist,
                         const GaussianFit& fit);

} // namespace motrng
