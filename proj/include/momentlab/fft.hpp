#pragma once
#include <complex>
#include <vector>

namespace momentlab {

// in-place radix-2 FFT, n a power of two; sign = -1 forward, +1 inverse
// (inverse is unnormalized)
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

// cyclic DFT of arbitrary length: X[k] = sum_m x[m] e(sign * km / N),
// e(t) = exp(2 pi i t). Bluestein chirp-z over a power-of-two convolution.
std::vector<std::complex<double>> dft_bluestein(const std::vector<std::complex<double>>& x,
                                                int sign);

// reference O(N^2) path with the same convention
std::vector<std::complex<double>> dft_naive(const std::vector<std::complex<double>>& x, int sign,
                                            int threads = 1);

}  // namespace momentlab
