#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "function.hpp"
#include "norms.hpp"
#include "params.hpp"

namespace lattice_extremal {

// A computable prefix of a sequence {u_n} together with its designated
// pointwise limit u.
struct FunctionSequence {
  std::vector<LatticeFunction> terms;
  LatticeFunction limit;

  FunctionSequence(std::vector<LatticeFunction> terms_, LatticeFunction limit_)
      : terms(std::move(terms_)), limit(std::move(limit_)) {
    if (terms.empty()) throw std::invalid_argument("FunctionSequence: empty prefix");
    for (const auto& t : terms)
      if (t.dim() != limit.dim())
        throw std::invalid_argument("FunctionSequence: dimension mismatch");
  }

  int dim() const { return limit.dim(); }
  int prefix_length() const { return static_cast<int>(terms.size()); }

  // the uniform gradient bound over the prefix
  double max_d1p(double p) const {
    double m = 0.0;
    for (const auto& t : terms) m = std::max(m, d1p_norm(t, p));
    return m;
  }
};

enum class BLMode { values, gradients };

namespace detail {

inline LatticeBox union_box(const LatticeFunction& a, const LatticeFunction& b, int extra = 0) {
  return LatticeBox(a.dim(), std::max(a.box().radius(), b.box().radius()) + extra);
}

}  // namespace detail

// Per term n: |(||u_n||_p^p - ||u_n - u||_p^p) - ||u||_p^p| in values mode,
// or the same with per-site gradient p-masses over {d(i,0) <= omega_radius}
// in gradients mode (omega_radius < 0 means all of Z^N). The three powers are
// combined site by site before summing, so stationary terms and splits with
// separated supports cancel exactly, including in floating point.
inline std::vector<double> bl_defect(const FunctionSequence& seq, double p, BLMode mode,
                                     long omega_radius = -1) {
  if (!(p > 0.0)) throw std::invalid_argument("bl_defect: need p > 0");
  if (mode == BLMode::gradients && !(p >= 1.0))
    throw std::invalid_argument("bl_defect: gradients mode needs p >= 1");
  std::vector<double> defects;
  defects.reserve(seq.terms.size());
  for (const LatticeFunction& term : seq.terms) {
    double sum = 0.0;
    if (mode == BLMode::values) {
      const LatticeBox box = detail::union_box(term, seq.limit);
      for (std::int64_t i = 0; i < box.site_count(); ++i) {
        const MultiIndex x = box.site_at(i);
        const double a = term.value_at(x);
        const double b = seq.limit.value_at(x);
        sum += pow_abs(a, p) - pow_abs(a - b, p) - pow_abs(b, p);
      }
    } else {
      const LatticeFunction diff = subtract(term, seq.limit);
      const LatticeBox box = detail::union_box(term, seq.limit, 1);
      for (std::int64_t i = 0; i < box.site_count(); ++i) {
        if (omega_radius >= 0 && box.l1_from_origin(i) > omega_radius) continue;
        const MultiIndex x = box.site_at(i);
        sum += grad_pnorm_pow_at(term, x, p) - grad_pnorm_pow_at(diff, x, p) -
               grad_pnorm_pow_at(seq.limit, x, p);
      }
    }
    defects.push_back(std::abs(sum));
  }
  return defects;
}

// (mu(R), nu(R)) = (sum_{d(i,0) > R} |grad u(i)|_p^p, sum_{d(i,0) > R} |u(i)|^q),
// tails over the combinatorial distance. Both vanish once R exceeds
// N * box_radius + 1.
inline std::pair<double, double> tail_mass(const LatticeFunction& u, long R, double p,
                                           double q) {
  if (R < 0) throw std::invalid_argument("tail_mass: need R >= 0");
  const LatticeBox ext(u.dim(), u.box().radius() + 1);
  double mu = 0.0;
  for (std::int64_t i = 0; i < ext.site_count(); ++i) {
    if (ext.l1_from_origin(i) <= R) continue;
    mu += grad_pnorm_pow_at(u, ext.site_at(i), p);
  }
  double nu = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    if (u.box().l1_from_origin(i) <= R) continue;
    nu += pow_abs(u[i], q);
  }
  return {mu, nu};
}

// Splitting gaps with the last prefix term standing in for the limit of the
// sequence and the tails at R_max standing in for mu_inf, nu_inf:
//   gap1 ~ |  ||u_last||_{D^{1,p}}^p - ||u||_{D^{1,p}}^p - mu(R_max) |,
//   gap2 ~ |  ||u_last||_q^q        - ||u||_q^q          - nu(R_max) |.
// Combined per site, so the known exact splits give exact zeros.
inline std::pair<double, double> composition_check(const FunctionSequence& seq,
                                                   const SobolevParams& prm, long r_max) {
  if (r_max < 0) throw std::invalid_argument("composition_check: need r_max >= 0");
  const LatticeFunction& last = seq.terms.back();
  double gap1 = 0.0;
  {
    const LatticeBox box = detail::union_box(last, seq.limit, 1);
    for (std::int64_t i = 0; i < box.site_count(); ++i) {
      const MultiIndex x = box.site_at(i);
      const double t = grad_pnorm_pow_at(last, x, prm.p);
      const double l = grad_pnorm_pow_at(seq.limit, x, prm.p);
      gap1 += (box.l1_from_origin(i) > r_max) ? -l : t - l;
    }
  }
  double gap2 = 0.0;
  {
    const LatticeBox box = detail::union_box(last, seq.limit);
    for (std::int64_t i = 0; i < box.site_count(); ++i) {
      const MultiIndex x = box.site_at(i);
      const double t = pow_abs(last.value_at(x), prm.q);
      const double l = pow_abs(seq.limit.value_at(x), prm.q);
      gap2 += (box.l1_from_origin(i) > r_max) ? -l : t - l;
    }
  }
  return {std::abs(gap1), std::abs(gap2)};
}

// margin = S_est^(-1) mu(R_max) - nu(R_max)^(p/q) for the escaping part of
// the last term; nonnegative (up to slack) whenever S_est is a valid lower
// bound for the quotient on the carrying box.
inline double cc_inequality_check(const FunctionSequence& seq, const SobolevParams& prm,
                                  double s_est, long r_max) {
  if (!(s_est > 0.0)) throw std::invalid_argument("cc_inequality_check: need S_est > 0");
  const auto [mu, nu] = tail_mass(seq.terms.back(), r_max, prm.p, prm.q);
  return mu / s_est - std::pow(nu, prm.p / prm.q);
}

// ---- canonical sequence constructions ----

inline FunctionSequence stationary_sequence(const LatticeFunction& u, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("stationary_sequence: need n_terms >= 1");
  return FunctionSequence(std::vector<LatticeFunction>(static_cast<std::size_t>(n_terms), u), u);
}

// u_n = u + w / n, limit u. Pass a w whose support is separated from u's by
// at least 2 to exercise the exact-additivity regime.
inline FunctionSequence perturbation_sequence(const LatticeFunction& u,
                                              const LatticeFunction& w, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("perturbation_sequence: need n_terms >= 1");
  std::vector<LatticeFunction> terms;
  terms.reserve(static_cast<std::size_t>(n_terms));
  for (int n = 1; n <= n_terms; ++n) terms.push_back(add(u, scaled(w, 1.0 / n)));
  return FunctionSequence(std::move(terms), u);
}

// u_n = translate(w, n * step * e1), limit 0: everything escapes.
inline FunctionSequence escaping_sequence(const LatticeFunction& w, int n_terms, int step) {
  if (n_terms < 1 || step < 1)
    throw std::invalid_argument("escaping_sequence: need n_terms >= 1 and step >= 1");
  std::vector<LatticeFunction> terms;
  terms.reserve(static_cast<std::size_t>(n_terms));
  MultiIndex shift(static_cast<std::size_t>(w.dim()), 0);
  for (int n = 1; n <= n_terms; ++n) {
    shift[0] = n * step;
    terms.push_back(translate(w, shift));
  }
  return FunctionSequence(std::move(terms), LatticeFunction(LatticeBox(w.dim(), 0)));
}

// u_n = u + translate(w, n * step * e1), limit u: a fixed part plus an
// escaping bubble.
inline FunctionSequence escape_sum_sequence(const LatticeFunction& u, const LatticeFunction& w,
                                            int n_terms, int step) {
  if (n_terms < 1 || step < 1)
    throw std::invalid_argument("escape_sum_sequence: need n_terms >= 1 and step >= 1");
  std::vector<LatticeFunction> terms;
  terms.reserve(static_cast<std::size_t>(n_terms));
  MultiIndex shift(static_cast<std::size_t>(u.dim()), 0);
  for (int n = 1; n <= n_terms; ++n) {
    shift[0] = n * step;
    terms.push_back(add(u, translate(w, shift)));
  }
  return FunctionSequence(std::move(terms), u);
}

// Everything the cc-check command reports, bundled.
struct CCReport {
  int prefix_len = 0;
  double s_est = 0.0;
  long r_max = 0;
  std::vector<long> radii;
  std::vector<std::vector<double>> mu_tail;  // [term][radius]
  std::vector<std::vector<double>> nu_tail;
  std::vector<double> defects_values;
  std::vector<double> defects_gradients;
  double gap1 = 0.0;
  double gap2 = 0.0;
  double cc_margin = 0.0;
};

inline CCReport make_cc_report(const FunctionSequence& seq, const SobolevParams& prm,
                               double s_est, long r_max) {
  CCReport rep;
  rep.prefix_len = seq.prefix_length();
  rep.s_est = s_est;
  rep.r_max = r_max;
  for (long R = 0; R <= r_max; ++R) rep.radii.push_back(R);
  for (const auto& term : seq.terms) {
    std::vector<double> mu_row, nu_row;
    for (long R = 0; R <= r_max; ++R) {
      const auto [mu, nu] = tail_mass(term, R, prm.p, prm.q);
      mu_row.push_back(mu);
      nu_row.push_back(nu);
    }
    rep.mu_tail.push_back(std::move(mu_row));
    rep.nu_tail.push_back(std::move(nu_row));
  }
  rep.defects_values = bl_defect(seq, prm.p, BLMode::values);
  rep.defects_gradients = bl_defect(seq, prm.p, BLMode::gradients);
  const auto gaps = composition_check(seq, prm, r_max);
  rep.gap1 = gaps.first;
  rep.gap2 = gaps.second;
  rep.cc_margin = cc_inequality_check(seq, prm, s_est, r_max);
  return rep;
}

}  // namespace lattice_extremal
