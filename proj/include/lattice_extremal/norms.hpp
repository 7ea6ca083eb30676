#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "function.hpp"
#include "parallel.hpp"

namespace lattice_extremal {

// |x|^p for p > 0. Small integer exponents get exact repeated
// multiplication, which also keeps results identical across libm builds.
inline double pow_abs(double x, double p) {
  x = std::abs(x);
  double ip;
  if (p > 0.0 && p <= 32.0 && std::modf(p, &ip) == 0.0) {
    int e = static_cast<int>(p);
    double r = 1.0, b = x;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  if (x == 0.0) return 0.0;
  return std::pow(x, p);
}

inline double pow_signed(double x, double p) {
  return x < 0.0 ? -pow_abs(-x, p) : pow_abs(x, p);
}

inline double lp_norm_pow(const LatticeFunction& u, double p) {
  if (!(p > 0.0) || std::isinf(p))
    throw std::invalid_argument("lp_norm_pow: need finite p > 0");
  return block_sum(u.size(), [&](std::int64_t i) { return pow_abs(u[i], p); });
}

// (sum |u|^p)^(1/p), or sup |u| for p = infinity.
inline double lp_norm(const LatticeFunction& u, double p) {
  if (std::isinf(p) && p > 0.0) {
    double m = 0.0;
    for (std::int64_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i]));
    return m;
  }
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: need p > 0");
  return std::pow(lp_norm_pow(u, p), 1.0 / p);
}

namespace detail {

// sum over the 2N neighbor differences at an in-box site; reads outside the
// box are 0. Axis order 0..N-1, lower neighbor before upper.
inline double grad_pow_sum_at_index(const LatticeFunction& u, std::int64_t idx, double p) {
  const LatticeBox& b = u.box();
  const double uc = u[idx];
  double s = 0.0;
  for (int k = 0; k < b.dim(); ++k) {
    const int c = b.coord(idx, k);
    const double lo = (c > -b.radius()) ? u[idx - b.stride(k)] : 0.0;
    const double hi = (c < b.radius()) ? u[idx + b.stride(k)] : 0.0;
    s += pow_abs(lo - uc, p);
    s += pow_abs(hi - uc, p);
  }
  return s;
}

}  // namespace detail

// sum_{y ~ x} |u(y) - u(x)|^p at any lattice site x.
inline double grad_pnorm_pow_at(const LatticeFunction& u, const MultiIndex& x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("grad_pnorm_pow_at: need p >= 1");
  if (u.box().contains(x))
    return detail::grad_pow_sum_at_index(u, u.box().index_of(x), p);
  const double uc = 0.0;
  double s = 0.0;
  MultiIndex y = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int d : {-1, +1}) {
      y[k] = x[k] + d;
      s += pow_abs(u.value_at(y) - uc, p);
    }
    y[k] = x[k];
  }
  return s;
}

inline double grad_pnorm_at(const LatticeFunction& u, const MultiIndex& x, double p) {
  return std::pow(grad_pnorm_pow_at(u, x, p), 1.0 / p);
}

// sum_x sum_{y ~ x} |u(y) - u(x)|^p: the double sum over ordered adjacent
// pairs, so every undirected edge enters twice. Sites outside the box read 0;
// the box's vertex-boundary sites each see exactly one in-box neighbor.
inline double d1p_norm_pow(const LatticeFunction& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("d1p_norm_pow: need p >= 1");
  const LatticeBox& b = u.box();
  const double interior = block_sum(
      b.site_count(), [&](std::int64_t i) { return detail::grad_pow_sum_at_index(u, i, p); });
  double rim = 0.0;
  for (std::int64_t i = 0; i < b.site_count(); ++i) {
    for (int k = 0; k < b.dim(); ++k) {
      const int c = b.coord(i, k);
      if (c == -b.radius()) rim += pow_abs(u[i], p);
      if (c == b.radius()) rim += pow_abs(u[i], p);
    }
  }
  return interior + rim;
}

inline double d1p_norm(const LatticeFunction& u, double p) {
  return std::pow(d1p_norm_pow(u, p), 1.0 / p);
}

struct MarginCheck {
  bool holds;
  double margin;
};

// ||u||_q <= ||u||_p for q >= p on the lattice; margin = ||u||_p - ||u||_q.
inline MarginCheck embedding_check(const LatticeFunction& u, double p, double q) {
  if (!(p > 0.0) || !(q >= p))
    throw std::invalid_argument("embedding_check: need 0 < p <= q");
  const double np = lp_norm(u, p);
  const double nq = lp_norm(u, q);
  const double margin = np - nq;
  return {margin >= -1e-12 * np, margin};
}

// (a^q + b^q)^(p/q) <= a^p + b^p for a, b >= 0 and q >= p > 0; equality only
// when a = 0 or b = 0.
inline MarginCheck power_sum_dominates(double a, double b, double p, double q) {
  if (!(a >= 0.0) || !(b >= 0.0))
    throw std::invalid_argument("power_sum_dominates: need a, b >= 0");
  if (!(p > 0.0) || !(q >= p))
    throw std::invalid_argument("power_sum_dominates: need 0 < p <= q");
  const double lhs = std::pow(std::pow(a, q) + std::pow(b, q), p / q);
  const double rhs = std::pow(a, p) + std::pow(b, p);
  return {lhs <= rhs + 1e-12 * std::max(1.0, rhs), rhs - lhs};
}

}  // namespace lattice_extremal
