#include "motrng/noise_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace motrng {

namespace {

double quantile(std::vector<double> sorted, double p) {
    // linear interpolation between order statistics (numpy default)
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// Solve the symmetric 3x3 system M d = b in place; returns false if singular.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> b,
            std::array<double, 3>& d) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300) return false;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 3; ++c) s -= m[r][c] * d[c];
        d[r] = s / m[r][r];
    }
    return true;
}

} // namespace

SlopeSeries slope_series(const std::vector<double>& samples, double dt) {
    if (samples.size() < 2)
        throw std::invalid_argument("slope_series: need at least 2 samples");
    if (dt <= 0.0) throw std::invalid_argument("slope_series: dt must be > 0");
    SlopeSeries out;
    out.dt = dt;
    out.values.resize(samples.size() - 1);
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        out.values[i] = (samples[i + 1] - samples[i]) / dt;
    return out;
}

Histogram histogram(const std::vector<double>& values, std::size_t n_bins) {
    if (values.empty()) throw std::invalid_argument("histogram: no values");
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    const double range = hi - lo;

    Histogram h;
    if (range == 0.0) {
        h.bin_edges = {lo - 0.5, lo + 0.5};
        h.counts = {static_cast<std::int64_t>(values.size())};
        return h;
    }

    std::size_t bins = n_bins;
    if (bins == 0) {
        const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
        double width = 2.0 * iqr / std::cbrt(static_cast<double>(values.size()));
        if (width <= 0.0)
            width = range / std::ceil(std::sqrt(static_cast<double>(values.size())));
        bins = static_cast<std::size_t>(std::ceil(range / width));
        bins = std::clamp<std::size_t>(bins, 1, 1u << 20);
    }

    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + range * static_cast<double>(i) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - lo) / range * static_cast<double>(bins));
        if (idx >= bins) idx = bins - 1; // v == hi
        ++h.counts[idx];
    }
    return h;
}

GaussianFit gaussian_fit(const Histogram& hist) {
    const std::size_t bins = hist.counts.size();
    std::size_t non_empty = 0;
    for (auto c : hist.counts) non_empty += c > 0;
    if (non_empty < 5)
        throw std::invalid_argument("gaussian_fit: need at least 5 non-empty bins");

    std::vector<double> x(bins), y(bins);
    double total = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        x[i] = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
        y[i] = static_cast<double>(hist.counts[i]);
        total += y[i];
        peak = std::max(peak, y[i]);
    }

    // moment initialization
    double mu = 0.0;
    for (std::size_t i = 0; i < bins; ++i) mu += x[i] * y[i];
    mu /= total;
    double var = 0.0;
    for (std::size_t i = 0; i < bins; ++i) var += (x[i] - mu) * (x[i] - mu) * y[i];
    var /= total;
    double sigma = std::sqrt(var);
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_fit: degenerate histogram (zero spread)");
    double amp = peak;

    auto sse = [&](double A, double m, double s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < bins; ++i) {
            const double z = (x[i] - m) / s;
            const double r = y[i] - A * std::exp(-0.5 * z * z);
            acc += r * r;
        }
        return acc;
    };

    double lambda = 1e-3;
    double current = sse(amp, mu, sigma);
    for (int iter = 0; iter < 200; ++iter) {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (std::size_t i = 0; i < bins; ++i) {
            const double z = (x[i] - mu) / sigma;
            const double e = std::exp(-0.5 * z * z);
            const double m = amp * e;
            const double r = y[i] - m;
            const std::array<double, 3> j = {e, m * z / sigma, m * z * z / sigma};
            for (int a = 0; a < 3; ++a) {
                jtr[a] += j[a] * r;
                for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
            }
        }
        auto damped = jtj;
        for (int a = 0; a < 3; ++a) damped[a][a] *= 1.0 + lambda;
        std::array<double, 3> d{};
        if (!solve3(damped, jtr, d)) break;
        const double na = amp + d[0], nm = mu + d[1], ns = sigma + d[2];
        if (!(ns > 0.0) || !std::isfinite(na) || !std::isfinite(nm)) {
            lambda *= 10.0;
            continue;
        }
        const double next = sse(na, nm, ns);
        if (next < current) {
            const bool converged = current - next < 1e-12 * (current + 1e-300);
            amp = na; mu = nm; sigma = ns; current = next;
            lambda = std::max(lambda * 0.3, 1e-12);
            if (converged) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }

    double mean_y = total / static_cast<double>(bins);
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < bins; ++i) ss_tot += (y[i] - mean_y) * (y[i] - mean_y);

    GaussianFit fit;
    fit.mu = mu;
    fit.sigma = std::abs(sigma);
    fit.amplitude = amp;
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - current / ss_tot, 0.0, 1.0) : 0.0;
    return fit;
}

TLGrid time_lag(const ChargeTrace& charge, std::size_t grid_size, double alpha) {
    const auto& q = charge.values;
    if (q.size() < 2) throw std::invalid_argument("time_lag: need at least 2 charge values");
    if (grid_size < 2) throw std::invalid_argument("time_lag: grid_size must be >= 2");

    const auto [mn_it, mx_it] = std::minmax_element(q.begin(), q.end());
    const double qmin = *mn_it, qmax = *mx_it;
    if (alpha == 0.0) {
        const double range = qmax - qmin;
        alpha = range > 0.0 ? 0.02 * range : std::max(std::abs(qmin) * 1e-6, 1e-12);
    }
    if (alpha <= 0.0) throw std::invalid_argument("time_lag: alpha must be > 0");

    TLGrid grid;
    grid.grid_size = grid_size;
    grid.alpha = alpha;
    const double lo = qmin - 3.0 * alpha;
    const double hi = qmax + 3.0 * alpha;
    const double span = hi - lo;
    grid.x_edges.resize(grid_size + 1);
    for (std::size_t i = 0; i <= grid_size; ++i)
        grid.x_edges[i] = lo + span * static_cast<double>(i) / static_cast<double>(grid_size);
    grid.y_edges = grid.x_edges;

    std::vector<double> density(grid_size * grid_size, 0.0);
    const double cell = span / static_cast<double>(grid_size);
    const double inv2a2 = 1.0 / (2.0 * alpha * alpha);
    const double norm = 1.0 / (2.0 * std::numbers::pi * alpha * alpha);
    // the kernel is separable and negligible past 6 alpha, so each pair only
    // touches a bounded square of cells
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(6.0 * alpha / cell)) + 1;
    auto center = [&](std::size_t i) {
        return lo + cell * (static_cast<double>(i) + 0.5);
    };
    std::vector<double> wx, wy;
    for (std::size_t n = 0; n + 1 < q.size(); ++n) {
        const double qx = q[n], qy = q[n + 1];
        const auto cx = static_cast<std::ptrdiff_t>((qx - lo) / cell);
        const auto cy = static_cast<std::ptrdiff_t>((qy - lo) / cell);
        const std::size_t x0 = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, cx - reach));
        const std::size_t x1 = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(grid_size) - 1, cx + reach));
        const std::size_t y0 = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, cy - reach));
        const std::size_t y1 = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(grid_size) - 1, cy + reach));
        wx.clear(); wy.clear();
        for (std::size_t ix = x0; ix <= x1; ++ix) {
            const double dx = center(ix) - qx;
            wx.push_back(std::exp(-dx * dx * inv2a2));
        }
        for (std::size_t iy = y0; iy <= y1; ++iy) {
            const double dy = center(iy) - qy;
            wy.push_back(std::exp(-dy * dy * inv2a2));
        }
        for (std::size_t iy = y0; iy <= y1; ++iy) {
            double* row = density.data() + iy * grid_size;
            const double wyv = norm * wy[iy - y0];
            for (std::size_t ix = x0; ix <= x1; ++ix)
                row[ix] += wyv * wx[ix - x0];
        }
    }

    const double dmax = *std::max_element(density.begin(), density.end());
    if (!(dmax > 0.0)) throw std::invalid_argument("time_lag: empty density");
    grid.k_norm = 1.0 / dmax;
    grid.values.resize(density.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double d = std::max(density[i], 1e-300);
        grid.values[i] = std::log10(grid.k_norm * d);
    }
    return grid;
}

BitBalance bit_balance(const BitStream& bits) {
    if (bits.empty()) throw std::invalid_argument("bit_balance: empty stream");
    BitBalance b;
    b.n_bits = bits.size();
    const auto ones = static_cast<double>(bits.count_ones());
    b.ones_fraction = ones / static_cast<double>(bits.size());
    b.zeros_fraction = 1.0 - b.ones_fraction;
    return b;
}

void write_tl_grid(const std::string& path, const TLGrid& grid) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("tl grid: cannot open " + path);
    f.precision(10);
    for (std::size_t iy = 0; iy < grid.grid_size; ++iy) {
        for (std::size_t ix = 0; ix < grid.grid_size; ++ix) {
            if (ix) f << ',';
            f << std::max(grid.at(ix, iy), -12.0); // display floor
        }
        f << '\n';
    }

    nlohmann::json meta;
    meta["grid_size"] = grid.grid_size;
    meta["alpha"] = grid.alpha;
    meta["k_norm"] = grid.k_norm;
    meta["x_edges"] = grid.x_edges;
    meta["y_edges"] = grid.y_edges;
    meta["display_floor"] = -12.0;
    std::ofstream m(path + ".meta.json");
    m << meta.dump(2) << '\n';
}

void write_histogram_fit(const std::string& path, const Histogram& hist,
                         const GaussianFit& fit) {
    nlohmann::json doc;
    doc["bin_edges"] = hist.bin_edges;
    doc["counts"] = hist.counts;
    doc["mu"] = fit.mu;
    doc["sigma"] = fit.sigma;
    doc["amplitude"] = fit.amplitude;
    doc["r_squared"] = fit.r_squared;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("histogram: cannot open " + path);
    f << doc.dump(2) << '\n';
}

} // namespace motrng
