#include "momentlab/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace momentlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
using cd = std::complex<double>;
}  // namespace

void fft_pow2(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  if (n & (n - 1)) throw std::invalid_argument("fft_pow2: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * kPi / static_cast<double>(len);
    cd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cd u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::vector<cd> dft_bluestein(const std::vector<cd>& x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  // e(sign*km/N) = w^{k^2} w^{m^2} conj-chirp w^{-(k-m)^2}, w = exp(sign*pi*i/N)
  std::size_t m = 1;
  while (m < 2 * n + 1) m <<= 1;
  std::vector<cd> a(m, cd(0.0)), b(m, cd(0.0));
  std::vector<cd> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2N avoids precision loss for large k
    std::size_t k2 = (k * k) % (2 * n);
    double ang = sign * kPi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cd(std::cos(ang), std::sin(ang));
  }
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = cd(1.0);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, +1);
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] / static_cast<double>(m) * chirp[k];
  return out;
}

std::vector<cd> dft_naive(const std::vector<cd>& x, int sign, int threads) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  auto work = [&](std::size_t k0, std::size_t k1) {
    for (std::size_t k = k0; k < k1; ++k) {
      cd acc(0.0);
      // accumulate with a running root to avoid n trig calls per output
      double ang = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      cd wk(std::cos(ang), std::sin(ang));
      cd w(1.0);
      for (std::size_t mm = 0; mm < n; ++mm) {
        if ((mm & 255u) == 0) {  // re-anchor the running root, exact mod-n reduction
          std::size_t r = (k * mm) % n;
          double a2 = sign * 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
          w = cd(std::cos(a2), std::sin(a2));
        }
        acc += x[mm] * w;
        w *= wk;
      }
      out[k] = acc;
    }
  };
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t k0 = t * chunk, k1 = std::min(n, k0 + chunk);
      if (k0 >= k1) break;
      pool.emplace_back(work, k0, k1);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace momentlab
