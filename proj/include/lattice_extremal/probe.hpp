#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "operators.hpp"

namespace lattice_extremal {

enum class BlowupOutcome { blow_up, no_blow_up, integrator_failure };

struct TrajectoryPoint {
  long step;
  double sup_norm;
  double l2_norm;
};

struct BlowupReport {
  BlowupOutcome outcome = BlowupOutcome::no_blow_up;
  long steps = 0;  // steps taken; for blow_up, the step that crossed the cap
  bool in_fujita_window = false;  // 0 < N(q-2) < 2
  double window_value = 0.0;      // N(q-2)
  double final_sup = 0.0;
  std::vector<TrajectoryPoint> trajectory;
};

// Iterate the explicit Euler reaction-diffusion step from u0 >= 0 until the
// sup-norm crosses the cap or max_steps runs out. dt <= 0 selects the
// adaptive step 0.1 / (4N + max v^(q-2)), recomputed every step. Negative
// values are an integrator failure, reported separately from blow-up.
inline BlowupReport run_blowup(int dim, double q, const LatticeFunction& u0, double dt,
                               long max_steps, double blow_up_cap = 1e6) {
  if (u0.dim() != dim) throw std::invalid_argument("run_blowup: dimension mismatch");
  if (!(q > 2.0)) throw std::invalid_argument("run_blowup: need q > 2");
  if (max_steps < 1) throw std::invalid_argument("run_blowup: need max_steps >= 1");
  BlowupReport rep;
  rep.window_value = dim * (q - 2.0);
  rep.in_fujita_window = rep.window_value > 0.0 && rep.window_value < 2.0;
  LatticeFunction v = u0;
  rep.trajectory.push_back({0, lp_norm(v, std::numeric_limits<double>::infinity()),
                            lp_norm(v, 2.0)});
  for (long step = 1; step <= max_steps; ++step) {
    const double step_dt = dt > 0.0 ? dt : default_heat_dt(v, q);
    HeatStepResult res = heat_step(v, step_dt, q, blow_up_cap);
    v = std::move(res.field);
    rep.trajectory.push_back({step, res.sup_norm, lp_norm(v, 2.0)});
    rep.steps = step;
    rep.final_sup = res.sup_norm;
    if (res.status == HeatStatus::blow_up) {
      rep.outcome = BlowupOutcome::blow_up;
      return rep;
    }
    if (res.status == HeatStatus::negative_values) {
      rep.outcome = BlowupOutcome::integrator_failure;
      return rep;
    }
  }
  rep.outcome = BlowupOutcome::no_blow_up;
  return rep;
}

// Residual-gated pointwise bound: wherever u >= 0 satisfies -Delta u = u^a
// to within eq_tol (normalized Laplacian), u must not exceed 1 + eq_tol.
// Returns the violating sites; expected empty.
inline std::vector<MultiIndex> check_bound_lemma(const LatticeFunction& u, double a,
                                                 double eq_tol) {
  if (!(a > 1.0)) throw std::invalid_argument("check_bound_lemma: need a > 1");
  for (std::int64_t i = 0; i < u.size(); ++i)
    if (u[i] < 0.0) throw std::invalid_argument("check_bound_lemma: negative input");
  const LatticeFunction lap = normalized_laplacian(u);
  std::vector<MultiIndex> violations;
  for (std::int64_t i = 0; i < lap.size(); ++i) {
    const MultiIndex x = lap.box().site_at(i);
    const double ux = u.value_at(x);
    const double residual = std::abs(-lap[i] - pow_abs(ux, a));
    if (residual <= eq_tol && ux > 1.0 + eq_tol) violations.push_back(x);
  }
  return violations;
}

}  // namespace lattice_extremal
