#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "function.hpp"
#include "operators.hpp"
#include "parallel.hpp"

namespace lattice_extremal {

enum class ConvMethod { direct, fft };

namespace detail {

// kernel sampled on the offset box [-D, D]^N, row-major
template <class Kernel>
std::vector<double> kernel_table(const Kernel& k, int dim, int D) {
  const LatticeBox off_box(dim, D);
  std::vector<double> table(static_cast<std::size_t>(off_box.site_count()));
  for (std::int64_t i = 0; i < off_box.site_count(); ++i)
    table[static_cast<std::size_t>(i)] = k(off_box.site_at(i));
  return table;
}

inline std::vector<int> flat_coords(const LatticeBox& b) {
  std::vector<int> coords(static_cast<std::size_t>(b.site_count() * b.dim()));
  for (std::int64_t i = 0; i < b.site_count(); ++i)
    for (int k = 0; k < b.dim(); ++k)
      coords[static_cast<std::size_t>(i * b.dim() + k)] = b.coord(i, k);
  return coords;
}

}  // namespace detail

// (Af)(i) = sum_{j != i} f(j) k(i - j) over the input box, for i in the
// output box (radius out_radius, defaulting to the input radius). The kernel
// is any callable on offset multi-indices; it should be symmetric, positive
// off the origin, and zero at the origin for the fixed-point machinery to
// behave. Both methods produce the same values up to FFT round-off.
template <class Kernel>
LatticeFunction kernel_convolve(const LatticeFunction& f, const Kernel& kernel,
                                ConvMethod method = ConvMethod::fft, int out_radius = -1) {
  const int dim = f.dim();
  if (dim > 16) throw std::invalid_argument("kernel_convolve: dim > 16 is past desk scale");
  const int r_in = f.box().radius();
  const int r_out = out_radius < 0 ? r_in : out_radius;
  const int D = r_in + r_out;
  const LatticeBox out_box(dim, r_out);
  const LatticeBox off_box(dim, D);
  const std::vector<double> table = detail::kernel_table(kernel, dim, D);

  if (method == ConvMethod::direct) {
    const std::vector<int> in_coords = detail::flat_coords(f.box());
    LatticeFunction out(out_box);
    parallel_for(out_box.site_count(), [&](std::int64_t i) {
      int oc[16];
      for (int k = 0; k < dim; ++k) oc[k] = out_box.coord(i, k);
      double s = 0.0;
      for (std::int64_t j = 0; j < f.size(); ++j) {
        std::int64_t off_idx = 0;
        for (int k = 0; k < dim; ++k)
          off_idx += (oc[k] - in_coords[static_cast<std::size_t>(j * dim + k)] + D) *
                     off_box.stride(k);
        s += f[j] * table[static_cast<std::size_t>(off_idx)];
      }
      out[i] = s;
    });
    return out;
  }

  // Circular convolution is alias-free on the output window as soon as
  // P >= 2(r_in + r_out) + 1; padding to a power of two >= 2(2 r_out + 1)
  // keeps the default r_out == r_in case on the usual doubled grid.
  const std::int64_t P =
      next_pow2(std::max<std::int64_t>(2 * (2 * static_cast<std::int64_t>(r_out) + 1),
                                       2 * static_cast<std::int64_t>(D) + 1));
  std::int64_t total = 1;
  for (int k = 0; k < dim; ++k) {
    if (total > (std::int64_t{1} << 27) / P)
      throw std::invalid_argument("kernel_convolve: FFT grid exceeds the memory cap");
    total *= P;
  }
  std::vector<std::complex<double>> F(static_cast<std::size_t>(total));
  std::vector<std::complex<double>> K(static_cast<std::size_t>(total));
  // f placed at shifted coordinates j + r_in; kernel at offsets mod P
  for (std::int64_t j = 0; j < f.size(); ++j) {
    std::int64_t idx = 0;
    for (int k = 0; k < dim; ++k) {
      std::int64_t stride = 1;
      for (int a = k + 1; a < dim; ++a) stride *= P;
      idx += (f.box().coord(j, k) + r_in) * stride;
    }
    F[static_cast<std::size_t>(idx)] = f[j];
  }
  for (std::int64_t o = 0; o < off_box.site_count(); ++o) {
    std::int64_t idx = 0;
    for (int k = 0; k < dim; ++k) {
      std::int64_t stride = 1;
      for (int a = k + 1; a < dim; ++a) stride *= P;
      const std::int64_t wrapped = ((off_box.coord(o, k) % P) + P) % P;
      idx += wrapped * stride;
    }
    K[static_cast<std::size_t>(idx)] = table[static_cast<std::size_t>(o)];
  }
  fft_nd(F, dim, P, false);
  fft_nd(K, dim, P, false);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= K[i];
  fft_nd(F, dim, P, true);
  LatticeFunction out(out_box);
  for (std::int64_t i = 0; i < out_box.site_count(); ++i) {
    std::int64_t idx = 0;
    for (int k = 0; k < dim; ++k) {
      std::int64_t stride = 1;
      for (int a = k + 1; a < dim; ++a) stride *= P;
      const std::int64_t wrapped = (((out_box.coord(i, k) + r_in) % P) + P) % P;
      idx += wrapped * stride;
    }
    out[i] = F[static_cast<std::size_t>(idx)].real();
  }
  return out;
}

// the shipped kernel: (Af)(i) = sum_{j != i} f(j) |i - j|^(-lambda)
inline LatticeFunction riesz_convolve(const LatticeFunction& f, double lambda,
                                      ConvMethod method = ConvMethod::fft,
                                      int out_radius = -1) {
  return kernel_convolve(f, RieszKernel(f.dim(), lambda), method, out_radius);
}

}  // namespace lattice_extremal
