#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "function.hpp"
#include "norms.hpp"
#include "parallel.hpp"

namespace lattice_extremal {

// phi_p(d) = |d|^(p-2) d with phi_p(0) = 0, so exponents below 2 stay finite.
inline double signed_power_diff(double d, double p) { return pow_signed(d, p - 1.0); }

// Delta_p u(x) = sum_{y ~ x} |u(y) - u(x)|^(p-2) (u(y) - u(x)). The output
// box gains one ring: the support can grow by one.
inline LatticeFunction p_laplacian(const LatticeFunction& u, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p_laplacian: need p > 1");
  if (p < 1.1)
    std::fprintf(stderr,
                 "p_laplacian: p = %g is close to 1; the exponent p-2 is strongly "
                 "singular near zero differences\n",
                 p);
  const LatticeBox out_box(u.dim(), u.box().radius() + 1);
  LatticeFunction out(out_box);
  parallel_for(out_box.site_count(), [&](std::int64_t i) {
    MultiIndex x = out_box.site_at(i);
    const double uc = u.value_at(x);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (int d : {-1, +1}) {
        x[k] += d;
        s += signed_power_diff(u.value_at(x) - uc, p);
        x[k] -= d;
      }
    }
    out[i] = s;
  });
  return out;
}

// (1/d_x) sum_{y ~ x} (u(y) - u(x)); on Z^N every degree is 2N, so this is
// p_laplacian(u, 2) / (2N).
inline LatticeFunction normalized_laplacian(const LatticeFunction& u) {
  LatticeFunction out = p_laplacian(u, 2.0);
  const double inv_deg = 1.0 / (2.0 * u.dim());
  for (double& v : out.values()) v *= inv_deg;
  return out;
}

enum class HeatStatus { ok, blow_up, negative_values };

struct HeatStepResult {
  LatticeFunction field;
  HeatStatus status;
  double sup_norm;
};

// One explicit Euler step of v_t = Delta_2 v + v^(q-1) on the box, zero
// Dirichlet data outside. Overflow is reported as blow-up, not a crash.
inline HeatStepResult heat_step(const LatticeFunction& v, double dt, double q,
                                double blow_up_cap = 1e6) {
  if (!(dt > 0.0)) throw std::invalid_argument("heat_step: need dt > 0");
  if (!(q > 2.0)) throw std::invalid_argument("heat_step: need q > 2");
  for (std::int64_t i = 0; i < v.size(); ++i)
    if (v[i] < 0.0) throw std::invalid_argument("heat_step: negative input");
  const LatticeBox& b = v.box();
  LatticeFunction out(b);
  const double deg = 2.0 * b.dim();
  bool negative = false;
  double sup = 0.0;
  for (std::int64_t i = 0; i < b.site_count(); ++i) {
    double nb = 0.0;
    for (int k = 0; k < b.dim(); ++k) {
      const int c = b.coord(i, k);
      if (c > -b.radius()) nb += v[i - b.stride(k)];
      if (c < b.radius()) nb += v[i + b.stride(k)];
    }
    const double lap = nb - deg * v[i];
    double nv = v[i] + dt * (lap + pow_abs(v[i], q - 1.0));
    if (!std::isfinite(nv)) nv = blow_up_cap;  // overflowed past the cap
    if (nv < 0.0) negative = true;
    sup = std::max(sup, std::abs(nv));
    out[i] = nv;
  }
  HeatStatus status = HeatStatus::ok;
  if (negative)
    status = HeatStatus::negative_values;
  else if (sup >= blow_up_cap)
    status = HeatStatus::blow_up;
  return {std::move(out), status, sup};
}

// Stability heuristic, recomputed every step: 0.1 / (4N + max v^(q-2)).
inline double default_heat_dt(const LatticeFunction& v, double q) {
  double sup = 0.0;
  for (std::int64_t i = 0; i < v.size(); ++i) sup = std::max(sup, std::abs(v[i]));
  return 0.1 / (4.0 * v.dim() + std::pow(sup, q - 2.0));
}

// k(d) = |d|_2^(-lambda) for d != 0; the diagonal is excluded (value 0).
// Symmetric in d <-> -d and invariant under lattice isometries. Defining
// LATTICE_EXTREMAL_KERNEL_L1 swaps in the l1 distance for sensitivity
// studies; everything downstream evaluates through at_distances, so the
// switch stays consistent across the direct, FFT, and bilinear paths.
struct RieszKernel {
  int dim;
  double lambda;

  RieszKernel(int dim_, double lambda_) : dim(dim_), lambda(lambda_) {
    if (!(lambda > 0.0) || !(lambda < dim))
      throw std::invalid_argument("RieszKernel: need 0 < lambda < dim");
  }

  double at_distances(std::int64_t squared_l2, long l1) const {
#ifdef LATTICE_EXTREMAL_KERNEL_L1
    (void)squared_l2;
    return l1 == 0 ? 0.0 : std::pow(static_cast<double>(l1), -lambda);
#else
    (void)l1;
    return squared_l2 == 0 ? 0.0
                           : std::pow(static_cast<double>(squared_l2), -0.5 * lambda);
#endif
  }

  double operator()(const MultiIndex& diff) const {
    std::int64_t sq = 0;
    long l1 = 0;
    for (int c : diff) {
      sq += static_cast<std::int64_t>(c) * c;
      l1 += std::labs(c);
    }
    return at_distances(sq, l1);
  }
};

}  // namespace lattice_extremal
