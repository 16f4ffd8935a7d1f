#include "motrng/dft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace motrng {

namespace {

using cplx = std::complex<double>;

void fft_pow2(std::vector<cplx>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) *
                           (invert ? 1.0 : -1.0);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (invert)
        for (auto& v : a) v /= static_cast<double>(n);
}

// chirp factor exp(-i*pi*(j^2 mod 2n)/n); reducing j^2 mod 2n keeps the
// argument small so cos/sin stay accurate for large j
cplx chirp(std::uint64_t j, std::uint64_t n, double sign) {
    const std::uint64_t r = (j * j) % (2 * n);
    const double ang = sign * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

} // namespace

std::vector<cplx> dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        std::vector<cplx> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = x[i];
        fft_pow2(a, false);
        return a;
    }

    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cplx> a(m), b(m);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx c = chirp(j, n, -1.0);
        a[j] = x[j] * c;
        b[j] = std::conj(c);
        if (j != 0) b[m - j] = b[j];
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, true);

    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp(k, n, -1.0);
    return out;
}

} // namespace motrng
