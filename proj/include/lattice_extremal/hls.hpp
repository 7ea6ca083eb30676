#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "convolve.hpp"
#include "norms.hpp"
#include "params.hpp"
#include "sobolev.hpp"  // ExtremalResult

namespace lattice_extremal {

struct HLSPair {
  LatticeFunction f;
  LatticeFunction g;
  double J_value;
};

// J(f, g) = sum_{i != j} f(i) g(j) |i - j|^(-lambda), the plain double sum.
inline double hls_bilinear(const LatticeFunction& f, const LatticeFunction& g, double lambda) {
  if (f.dim() != g.dim()) throw std::invalid_argument("hls_bilinear: dimension mismatch");
  const RieszKernel kernel(f.dim(), lambda);
  const int dim = f.dim();
  const std::vector<int> fc = detail::flat_coords(f.box());
  const std::vector<int> gc = detail::flat_coords(g.box());
  return block_sum(f.size(), [&](std::int64_t i) {
    if (f[i] == 0.0) return 0.0;
    double s = 0.0;
    for (std::int64_t j = 0; j < g.size(); ++j) {
      std::int64_t sq = 0;
      long l1 = 0;
      for (int k = 0; k < dim; ++k) {
        const std::int64_t d = static_cast<std::int64_t>(fc[static_cast<std::size_t>(i * dim + k)]) -
                               gc[static_cast<std::size_t>(j * dim + k)];
        sq += d * d;
        l1 += std::labs(d);
      }
      s += g[j] * kernel.at_distances(sq, l1);
    }
    return f[i] * s;
  });
}

// ||A f||_t / ||f||_r with the convolution truncated to f's box.
inline double hls_rayleigh(const LatticeFunction& f, const HLSParams& prm,
                           ConvMethod method = ConvMethod::fft) {
  if (f.is_zero()) throw std::invalid_argument("hls_rayleigh: zero function");
  const LatticeFunction af = riesz_convolve(f, prm.lambda, method);
  return lp_norm(af, prm.t) / lp_norm(f, prm.r);
}

// g = |h|^(t-1) sgn(h) / ||h||_t^(t-1): the Hoelder-equality dual element, so
// ||g||_s = 1 for the conjugate s and sum h g = ||h||_t.
inline LatticeFunction dual_normalize(const LatticeFunction& h, double t) {
  if (h.is_zero()) throw std::invalid_argument("dual_normalize: zero function");
  if (!(t > 1.0)) throw std::invalid_argument("dual_normalize: need t > 1");
  const double nt = lp_norm(h, t);
  const double scale = std::pow(nt, t - 1.0);
  LatticeFunction g(h.box());
  for (std::int64_t i = 0; i < h.size(); ++i)
    g[i] = pow_signed(h[i], t - 1.0) / scale;
  return g;
}

struct HLSResidual {
  double f_residual;  // sup |K f^(r-1) - A g|
  double g_residual;  // sup |K g^(s-1) - A f|
  double sup() const { return std::max(f_residual, g_residual); }
};

// Pointwise defect of the coupled stationarity system on the pair's box.
inline HLSResidual el_residual_hls(const HLSPair& pair, const HLSParams& prm, double k_est,
                                   ConvMethod method = ConvMethod::fft) {
  const LatticeFunction af = riesz_convolve(pair.f, prm.lambda, method);
  const LatticeFunction ag = riesz_convolve(pair.g, prm.lambda, method);
  double rf = 0.0, rg = 0.0;
  for (std::int64_t i = 0; i < pair.f.size(); ++i)
    rf = std::max(rf, std::abs(k_est * pow_signed(pair.f[i], prm.r - 1.0) -
                               ag.value_at(pair.f.box().site_at(i))));
  for (std::int64_t i = 0; i < pair.g.size(); ++i)
    rg = std::max(rg, std::abs(k_est * pow_signed(pair.g[i], prm.s - 1.0) -
                               af.value_at(pair.g.box().site_at(i))));
  return {rf, rg};
}

struct PowerIterateOptions {
  double tol = 1e-12;
  int stall_sweeps = 10;
  double el_tol = 1e-6;
  long max_sweeps = 50000;
  ConvMethod conv = ConvMethod::fft;
  std::optional<LatticeFunction> init;
};

struct PowerIterateResult {
  ExtremalResult result;  // constant_estimate = K_R, extremizer = f
  HLSPair pair;
};

// Alternating maximization of J over the product of the r- and s-spheres,
// with the convolution truncated to the box. Each half-step is the exact
// maximizer against the fixed partner: the g-step by t-duality on h = A f,
// the f-step by duality with the conjugate exponent r/(r-1) on h = A g.
// J never decreases across half-steps; at the fixed point the pair solves
// K f^(r-1) = A g, K g^(s-1) = A f with K = J.
inline PowerIterateResult power_iterate(const HLSParams& prm, const LatticeBox& box,
                                        const PowerIterateOptions& opts = {}) {
  if (box.dim() != prm.dim) throw std::invalid_argument("power_iterate: dimension mismatch");
  if (box.radius() < 1) throw std::invalid_argument("power_iterate: need box radius >= 1");
  const double r_conj = prm.r / (prm.r - 1.0);

  LatticeFunction f = opts.init ? padded_to(*opts.init, box.radius())
                                : gaussian_bump(box, 1.0, static_cast<double>(box.radius()));
  for (double& v : f.values()) v = std::abs(v);
  if (f.is_zero()) throw std::invalid_argument("power_iterate: zero initial function");
  {
    const double inv = 1.0 / lp_norm(f, prm.r);
    for (double& v : f.values()) v *= inv;
  }

  ExtremalResult res;
  res.box_radius = box.radius();
  LatticeFunction g = f;
  double j_prev = 0.0;
  int stall = 0;
  long sweep = 0;
  bool converged = false;

  while (sweep < opts.max_sweeps) {
    ++sweep;
    LatticeFunction h = riesz_convolve(f, prm.lambda, opts.conv);
    g = dual_normalize(h, prm.t);
    res.trace.emplace_back(2 * sweep - 1, lp_norm(h, prm.t));
    LatticeFunction h2 = riesz_convolve(g, prm.lambda, opts.conv);
    f = dual_normalize(h2, r_conj);
    const double j_full = lp_norm(h2, r_conj);
    res.trace.emplace_back(2 * sweep, j_full);

    if (std::abs(j_full - j_prev) <= opts.tol * std::max(1.0, j_full))
      ++stall;
    else
      stall = 0;
    j_prev = j_full;

    if (stall >= opts.stall_sweeps) {
      const HLSResidual r = el_residual_hls({f, g, j_full}, prm, j_full, opts.conv);
      if (r.sup() <= opts.el_tol) {
        converged = true;
        break;
      }
      stall = 0;
    }
  }

  const double K = hls_bilinear(f, g, prm.lambda);
  const HLSResidual r = el_residual_hls({f, g, K}, prm, K, opts.conv);
  res.constant_estimate = K;
  res.extremizer = f;
  res.residual_sup = r.sup();
  res.iterations = sweep;
  res.converged = converged;
  return {std::move(res), {std::move(f), std::move(g), K}};
}

// K_R along strictly increasing radii, warm-started; nested feasible sets
// make the sequence nondecreasing.
inline std::vector<PowerIterateResult> estimate_K(const HLSParams& prm,
                                                  const std::vector<int>& radii,
                                                  const PowerIterateOptions& base = {}) {
  if (radii.empty()) throw std::invalid_argument("estimate_K: empty radius list");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("estimate_K: radii must be strictly increasing");
  std::vector<PowerIterateResult> results;
  results.reserve(radii.size());
  PowerIterateOptions opts = base;
  for (int R : radii) {
    if (!results.empty()) opts.init = results.back().pair.f;
    results.push_back(power_iterate(prm, LatticeBox(prm.dim, R), opts));
  }
  return results;
}

}  // namespace lattice_extremal
