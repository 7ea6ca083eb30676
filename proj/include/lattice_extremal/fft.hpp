#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lattice_extremal {

inline bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline std::int64_t next_pow2(std::int64_t n) {
  std::int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 transform; the length must be a power of two. The inverse
// includes the 1/n scale.
inline void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(static_cast<std::int64_t>(n)))
    throw std::invalid_argument("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> even = a[i + k];
        const std::complex<double> odd = a[i + k + len / 2] * w;
        a[i + k] = even + odd;
        a[i + k + len / 2] = even - odd;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

// In-place transform along every axis of a dense row-major P^dim array.
inline void fft_nd(std::vector<std::complex<double>>& data, int dim, std::int64_t P,
                   bool inverse) {
  std::int64_t total = 1;
  for (int k = 0; k < dim; ++k) total *= P;
  if (static_cast<std::int64_t>(data.size()) != total)
    throw std::invalid_argument("fft_nd: size mismatch");
  std::vector<std::complex<double>> line(static_cast<std::size_t>(P));
  for (int axis = 0; axis < dim; ++axis) {
    std::int64_t stride = 1;
    for (int k = axis + 1; k < dim; ++k) stride *= P;
    const std::int64_t block = stride * P;
    for (std::int64_t base = 0; base < total; base += block) {
      for (std::int64_t off = 0; off < stride; ++off) {
        for (std::int64_t k = 0; k < P; ++k)
          line[static_cast<std::size_t>(k)] = data[static_cast<std::size_t>(base + off + k * stride)];
        fft(line, inverse);
        for (std::int64_t k = 0; k < P; ++k)
          data[static_cast<std::size_t>(base + off + k * stride)] = line[static_cast<std::size_t>(k)];
      }
    }
  }
}

}  // namespace lattice_extremal
