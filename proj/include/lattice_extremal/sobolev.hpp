#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "function.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "params.hpp"

namespace lattice_extremal {

struct MinimizeOptions {
  double tol = 1e-10;   // relative objective stall threshold
  int stall_iters = 25; // consecutive stalled iterations before testing the residual
  double el_tol = 1e-6;
  long max_iters = 200000;
  int recenter_every = 100;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
  std::optional<LatticeFunction> init;  // defaults to a centered bump
  // smoothing schedule for the p = 1 energy, |d| -> sqrt(d^2 + eps^2) - eps
  double eps_start = 1e-2;
  double eps_end = 1e-8;
};

struct ExtremalResult {
  double constant_estimate = 0.0;
  LatticeFunction extremizer{LatticeBox(1, 0)};
  double residual_sup = std::numeric_limits<double>::quiet_NaN();
  double rescaled_residual_sup = std::numeric_limits<double>::quiet_NaN();
  long iterations = 0;
  std::vector<std::pair<long, double>> trace;  // (iteration, objective)
  int box_radius = 0;
  bool converged = false;
};

// ||u||_{D^{1,p}}^p / ||u||_q^p; invariant under u -> c u.
inline double sobolev_quotient(const LatticeFunction& u, const SobolevParams& prm) {
  if (u.is_zero()) throw std::invalid_argument("sobolev_quotient: zero function");
  return d1p_norm_pow(u, prm.p) / std::pow(lp_norm(u, prm.q), prm.p);
}

struct ELResidual {
  double residual_sup;           // sup over the box of |Delta_p v + mu v^(q-1)|
  double multiplier;             // mu = S/2 under the double-sum energy
  double rescaled_residual_sup;  // for w = mu^(1/(q-p)) v against Delta_p w + w^(q-1) = 0
  LatticeFunction rescaled;
};

// Stationarity of the double-sum energy on the q-sphere. Differentiating
// sum_x sum_{y~x} |u(y)-u(x)|^p hits every undirected edge twice, so
// dE = -2p Delta_p u, while d(||u||_q^q) = q u^(q-1); pairing the multiplier
// against u fixes Delta_p v = -(S/2) v^(q-1). The constant is removed by
// w = c v with c^(q-p) = S/2.
inline ELResidual el_residual(const LatticeFunction& v, const SobolevParams& prm, double s_est) {
  if (!(prm.p > 1.0)) throw std::invalid_argument("el_residual: p = 1 is out of scope");
  if (!(prm.q > 2.0)) throw std::invalid_argument("el_residual: need q > 2");
  const double mu = 0.5 * s_est;
  const LatticeFunction lap = p_laplacian(v, prm.p);
  double rsup = 0.0;
  for (std::int64_t i = 0; i < v.size(); ++i) {
    const MultiIndex x = v.box().site_at(i);
    const double r = lap.value_at(x) + mu * pow_signed(v[i], prm.q - 1.0);
    rsup = std::max(rsup, std::abs(r));
  }
  const double c = std::pow(mu, 1.0 / (prm.q - prm.p));
  LatticeFunction w = scaled(v, c);
  const LatticeFunction lapw = p_laplacian(w, prm.p);
  double rwsup = 0.0;
  for (std::int64_t i = 0; i < w.size(); ++i) {
    const MultiIndex x = w.box().site_at(i);
    const double r = lapw.value_at(x) + pow_signed(w[i], prm.q - 1.0);
    rwsup = std::max(rwsup, std::abs(r));
  }
  return {rsup, mu, rwsup, std::move(w)};
}

inline ELResidual el_residual(const ExtremalResult& result, const SobolevParams& prm) {
  return el_residual(result.extremizer, prm, result.constant_estimate);
}

// ||u||_{D^{1,p}}^p >= S_est ||u||_q^p - slack; margin returned.
inline MarginCheck verify_sobolev(const LatticeFunction& u, const SobolevParams& prm,
                                  double s_est, double slack = 1e-9) {
  if (u.is_zero()) throw std::invalid_argument("verify_sobolev: zero function");
  const double margin =
      d1p_norm_pow(u, prm.p) - s_est * std::pow(lp_norm(u, prm.q), prm.p);
  return {margin >= -slack, margin};
}

namespace detail {

// |d|^p per edge, or its epsilon-smoothing for p = 1.
struct EdgeEnergy {
  double p;
  double eps = 0.0;
  double value(double d) const {
    if (eps > 0.0) return std::sqrt(d * d + eps * eps) - eps;
    return pow_abs(d, p);
  }
  double derivative(double d) const {
    if (eps > 0.0) return d / std::sqrt(d * d + eps * eps);
    return p * pow_signed(d, p - 1.0);
  }
};

// E(u) = sum over ordered adjacent pairs (each undirected edge twice), with
// zero Dirichlet reads outside the box; grad = dE/du on the box.
inline double edge_energy(const LatticeFunction& u, const EdgeEnergy& phi,
                          std::vector<double>* grad) {
  const LatticeBox& b = u.box();
  if (grad) grad->assign(static_cast<std::size_t>(b.site_count()), 0.0);
  double E = 0.0;
  for (std::int64_t i = 0; i < b.site_count(); ++i) {
    const double uc = u[i];
    for (int k = 0; k < b.dim(); ++k) {
      const int c = b.coord(i, k);
      const bool up_inside = c < b.radius();
      const double d = (up_inside ? u[i + b.stride(k)] : 0.0) - uc;
      E += 2.0 * phi.value(d);
      if (grad) {
        const double g = 2.0 * phi.derivative(d);
        (*grad)[static_cast<std::size_t>(i)] -= g;
        if (up_inside) (*grad)[static_cast<std::size_t>(i + b.stride(k))] += g;
      }
      if (c == -b.radius()) {  // edge into the exterior on the lower face
        const double dl = 0.0 - uc;
        E += 2.0 * phi.value(dl);
        if (grad) (*grad)[static_cast<std::size_t>(i)] -= 2.0 * phi.derivative(dl);
      }
    }
  }
  return E;
}

// |u| projection then q-sphere normalization; false when u vanished
inline bool project_nonneg_normalize(LatticeFunction& u, double q) {
  for (double& v : u.values()) v = std::abs(v);
  const double nq = lp_norm(u, q);
  if (!(nq > 0.0)) return false;
  const double inv = 1.0 / nq;
  for (double& v : u.values()) v *= inv;
  return true;
}

}  // namespace detail

// Projected gradient descent for S_R = inf ||u||_{D^{1,p}}^p over the
// q-sphere of functions supported in the box: descend the energy, backtrack,
// take |u| and renormalize, recenter periodically when it does not hurt the
// objective. Warm starts come in through opts.init.
inline ExtremalResult minimize_on_box(const SobolevParams& prm, const LatticeBox& box,
                                      const MinimizeOptions& opts = {}) {
  if (!prm.supercritical())
    throw std::invalid_argument("minimize_on_box: need the supercritical range q > p*");
  if (box.dim() != prm.dim) throw std::invalid_argument("minimize_on_box: dimension mismatch");
  if (box.radius() < 1) throw std::invalid_argument("minimize_on_box: need box radius >= 1");

  if (opts.init && opts.init->dim() != prm.dim)
    throw std::invalid_argument("minimize_on_box: init dimension mismatch");
  LatticeFunction u = opts.init ? padded_to(*opts.init, box.radius())
                                : gaussian_bump(box, 1.0, static_cast<double>(box.radius()));
  if (!detail::project_nonneg_normalize(u, prm.q))
    throw std::invalid_argument("minimize_on_box: zero initial function");

  std::vector<double> eps_stages;
  if (prm.p == 1.0) {
    for (double e = opts.eps_start; e >= opts.eps_end * (1.0 - 1e-12); e *= 0.1)
      eps_stages.push_back(e);
  } else {
    eps_stages.push_back(0.0);
  }

  ExtremalResult res;
  res.box_radius = box.radius();
  long iter = 0;
  const std::int64_t n = box.site_count();
  std::vector<double> grad, normal, gtan;
  double step = 1.0;

  for (std::size_t stage = 0; stage < eps_stages.size(); ++stage) {
    const detail::EdgeEnergy phi{prm.p, eps_stages[stage]};
    double E = detail::edge_energy(u, phi, &grad);
    if (stage == 0) res.trace.emplace_back(iter, E);
    int stall = 0;
    bool stage_done = false;

    while (!stage_done && iter < opts.max_iters) {
      ++iter;
      // tangential gradient on the q-sphere (u >= 0, ||u||_q = 1)
      normal.assign(static_cast<std::size_t>(n), 0.0);
      for (std::int64_t i = 0; i < n; ++i)
        normal[static_cast<std::size_t>(i)] = pow_abs(u[i], prm.q - 1.0);
      double gn = 0.0, nn = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        gn += grad[static_cast<std::size_t>(i)] * normal[static_cast<std::size_t>(i)];
        nn += normal[static_cast<std::size_t>(i)] * normal[static_cast<std::size_t>(i)];
      }
      const double coef = nn > 0.0 ? gn / nn : 0.0;
      gtan.assign(static_cast<std::size_t>(n), 0.0);
      double gt2 = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        const double g = grad[static_cast<std::size_t>(i)] - coef * normal[static_cast<std::size_t>(i)];
        gtan[static_cast<std::size_t>(i)] = g;
        gt2 += g * g;
      }

      double t = step;
      bool accepted = false;
      double best_E = E;
      LatticeFunction best_u = u;
      for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
        LatticeFunction trial = u;
        for (std::int64_t i = 0; i < n; ++i)
          trial[i] = u[i] - t * gtan[static_cast<std::size_t>(i)];
        if (!detail::project_nonneg_normalize(trial, prm.q)) {
          t *= opts.shrink;
          continue;
        }
        const double Et = detail::edge_energy(trial, phi, nullptr);
        if (Et <= E - opts.armijo * t * gt2) {
          u = std::move(trial);
          E = Et;
          accepted = true;
          step = std::min(t * 2.0, 1e3);
          break;
        }
        if (Et < best_E) {
          best_E = Et;
          best_u = trial;
        }
        t *= opts.shrink;
      }
      if (!accepted && best_E < E) {  // plain decrease still moves us forward
        u = std::move(best_u);
        E = best_E;
        accepted = true;
        step = std::max(t, 1e-12);
      }

      if (accepted) detail::edge_energy(u, phi, &grad);
      res.trace.emplace_back(iter, E);

      if (opts.recenter_every > 0 && iter % opts.recenter_every == 0) {
        // shift the peak to the origin when the translation (clipped to the
        // box) does not increase the energy
        const Recentered rc = recenter(u);
        bool moved = false;
        for (int c : rc.shift)
          if (c != 0) moved = true;
        if (moved && rc.fn.box().radius() <= box.radius()) {
          LatticeFunction cand = padded_to(rc.fn, box.radius());
          if (detail::project_nonneg_normalize(cand, prm.q)) {
            const double Ec = detail::edge_energy(cand, phi, nullptr);
            if (Ec <= E) {
              u = std::move(cand);
              E = Ec;
              detail::edge_energy(u, phi, &grad);
            }
          }
        }
      }

      const double prev = res.trace[res.trace.size() - 2].second;
      if (std::abs(prev - E) <= opts.tol * std::max(1.0, std::abs(E)))
        ++stall;
      else
        stall = 0;

      if (stall >= opts.stall_iters) {
        if (stage + 1 < eps_stages.size()) {
          stage_done = true;  // tighten the smoothing and continue
        } else if (prm.p > 1.0 && prm.q > 2.0) {
          const double S_now = sobolev_quotient(u, prm);
          const double r = el_residual(u, prm, S_now).residual_sup;
          if (r <= opts.el_tol) {
            res.converged = true;
            stage_done = true;
          } else {
            stall = 0;  // objective is flat but stationarity is not yet met
          }
        } else {
          res.converged = true;  // p = 1: objective stall is the only signal
          stage_done = true;
        }
      }
    }
  }

  res.iterations = iter;
  res.extremizer = u;
  res.constant_estimate = sobolev_quotient(u, prm);
  if (prm.p > 1.0 && prm.q > 2.0) {
    const ELResidual el = el_residual(u, prm, res.constant_estimate);
    res.residual_sup = el.residual_sup;
    res.rescaled_residual_sup = el.rescaled_residual_sup;
  }
  return res;
}

// S_R along strictly increasing radii; each radius warm-starts from the
// previous extremizer zero-padded, so the sequence is nonincreasing.
inline std::vector<ExtremalResult> estimate_S(const SobolevParams& prm,
                                              const std::vector<int>& radii,
                                              const MinimizeOptions& base = {}) {
  if (radii.empty()) throw std::invalid_argument("estimate_S: empty radius list");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("estimate_S: radii must be strictly increasing");
  std::vector<ExtremalResult> results;
  results.reserve(radii.size());
  MinimizeOptions opts = base;
  for (int R : radii) {
    if (!results.empty()) opts.init = results.back().extremizer;
    results.push_back(minimize_on_box(prm, LatticeBox(prm.dim, R), opts));
  }
  return results;
}

}  // namespace lattice_extremal
