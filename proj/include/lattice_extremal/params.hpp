#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lattice_extremal {

// Exponents for ||u||_q <= C ||u||_{D^{1,p}} on Z^N. Valid from the critical
// line q = Np/(N-p) upward; extremizers are sought strictly above it.
struct SobolevParams {
  int dim;
  double p;
  double q;

  SobolevParams(int dim_, double p_, double q_) : dim(dim_), p(p_), q(q_) {
    if (dim < 3) throw std::invalid_argument("SobolevParams: need dim >= 3");
    if (!(p >= 1.0) || !(p < dim))
      throw std::invalid_argument("SobolevParams: need 1 <= p < dim");
    if (!(q >= p_star() - 1e-12))
      throw std::invalid_argument("SobolevParams: need q >= dim*p/(dim-p)");
  }

  double p_star() const { return dim * p / (dim - p); }
  bool supercritical() const { return q > p_star(); }
};

// Exponents for the Riesz-kernel bound ||k * f||_t <= K ||f||_r with
// k(i) = |i|^(-lambda); s is the conjugate of t pairing the bilinear form.
struct HLSParams {
  int dim;
  double r;
  double s;
  double t;
  double lambda;

  HLSParams(int dim_, double r_, double s_, double t_, double lambda_)
      : dim(dim_), r(r_), s(s_), t(t_), lambda(lambda_) {
    if (dim < 1) throw std::invalid_argument("HLSParams: need dim >= 1");
    if (!(r > 1.0) || !(s > 1.0) || !(t > 1.0))
      throw std::invalid_argument("HLSParams: need r, s, t > 1");
    if (!(lambda > 0.0) || !(lambda < dim))
      throw std::invalid_argument("HLSParams: need 0 < lambda < dim");
    if (std::abs(1.0 / t + 1.0 / s - 1.0) > 1e-12)
      throw std::invalid_argument("HLSParams: t and s must be conjugate (1/t + 1/s = 1)");
  }

  // derive t from s
  static HLSParams conjugate(int dim_, double r_, double s_, double lambda_) {
    if (!(s_ > 1.0)) throw std::invalid_argument("HLSParams: need s > 1");
    return HLSParams(dim_, r_, s_, s_ / (s_ - 1.0), lambda_);
  }

  double r_star() const {
    const double inv = 1.0 + 1.0 / t - lambda / dim;
    return inv > 0.0 ? 1.0 / inv : std::numeric_limits<double>::infinity();
  }

  // 1/r + lambda/N > 1 + 1/t, equivalently r < r_star
  bool supercritical() const { return 1.0 / r + lambda / dim > 1.0 + 1.0 / t; }
};

}  // namespace lattice_extremal
