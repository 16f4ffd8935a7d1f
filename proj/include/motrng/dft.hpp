#pragma once
#include <complex>
#include <vector>

namespace motrng {

/// Forward DFT of arbitrary length, O(n log n): radix-2 when n is a power
/// of two, Bluestein's chirp-z otherwise.
std::vector<std::complex<double>> dft(const std::vector<double>& x);

} // namespace motrng
