#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "box.hpp"

namespace lattice_extremal {

// Real values on a LatticeBox; reads outside the box are 0, so a
// LatticeFunction is a finitely supported function on Z^N.
class LatticeFunction {
 public:
  explicit LatticeFunction(LatticeBox box, double fill = 0.0)
      : box_(box), values_(static_cast<std::size_t>(box.site_count()), fill) {
    if (!std::isfinite(fill)) throw std::invalid_argument("LatticeFunction: non-finite fill");
  }

  LatticeFunction(LatticeBox box, std::vector<double> values)
      : box_(box), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != box_.site_count())
      throw std::invalid_argument("LatticeFunction: value count does not match the box");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("LatticeFunction: non-finite value");
  }

  const LatticeBox& box() const { return box_; }
  int dim() const { return box_.dim(); }
  std::int64_t size() const { return box_.site_count(); }

  double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double value_at(const MultiIndex& x) const {
    return box_.contains(x) ? values_[static_cast<std::size_t>(box_.index_of(x))] : 0.0;
  }
  void set(const MultiIndex& x, double v) {
    values_[static_cast<std::size_t>(box_.index_of(x))] = v;
  }

  bool is_zero() const {
    for (double v : values_)
      if (v != 0.0) return false;
    return true;
  }

  bool all_finite() const {
    for (double v : values_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  // Largest |x_k| over the support; -1 for the zero function.
  int support_radius() const {
    int r = -1;
    for (std::int64_t i = 0; i < size(); ++i) {
      if (values_[static_cast<std::size_t>(i)] == 0.0) continue;
      for (int k = 0; k < dim(); ++k)
        r = std::max(r, std::abs(box_.coord(i, k)));
    }
    return r;
  }

 private:
  LatticeBox box_;
  std::vector<double> values_;
};

inline LatticeFunction delta_at(const LatticeBox& box, const MultiIndex& x, double value = 1.0) {
  LatticeFunction u(box);
  u.set(x, value);
  return u;
}

inline LatticeFunction unit_delta(int dim, int radius = 1) {
  return delta_at(LatticeBox(dim, radius), MultiIndex(static_cast<std::size_t>(dim), 0));
}

inline LatticeFunction padded_to(const LatticeFunction& u, int radius) {
  if (radius < u.box().radius())
    throw std::invalid_argument("padded_to: target radius smaller than the current box");
  if (radius == u.box().radius()) return u;
  LatticeFunction out(LatticeBox(u.dim(), radius));
  for (std::int64_t i = 0; i < u.size(); ++i)
    out.set(u.box().site_at(i), u[i]);
  return out;
}

// v(i) = u(i - shift), represented on the smallest box holding the moved
// support.
inline LatticeFunction translate(const LatticeFunction& u, const MultiIndex& shift) {
  if (static_cast<int>(shift.size()) != u.dim())
    throw std::invalid_argument("translate: shift arity mismatch");
  int r = 0;
  bool any = false;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    any = true;
    for (int k = 0; k < u.dim(); ++k)
      r = std::max(r, std::abs(u.box().coord(i, k) + shift[static_cast<std::size_t>(k)]));
  }
  if (!any) return LatticeFunction(LatticeBox(u.dim(), 0));
  LatticeFunction out(LatticeBox(u.dim(), r));
  for (std::int64_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    MultiIndex x = u.box().site_at(i);
    for (int k = 0; k < u.dim(); ++k) x[static_cast<std::size_t>(k)] += shift[static_cast<std::size_t>(k)];
    out.set(x, u[i]);
  }
  return out;
}

inline LatticeFunction add(const LatticeFunction& a, const LatticeFunction& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
  const LatticeBox box(a.dim(), std::max(a.box().radius(), b.box().radius()));
  LatticeFunction out(box);
  for (std::int64_t i = 0; i < box.site_count(); ++i) {
    const MultiIndex x = box.site_at(i);
    out[i] = a.value_at(x) + b.value_at(x);
  }
  return out;
}

inline LatticeFunction subtract(const LatticeFunction& a, const LatticeFunction& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("subtract: dimension mismatch");
  const LatticeBox box(a.dim(), std::max(a.box().radius(), b.box().radius()));
  LatticeFunction out(box);
  for (std::int64_t i = 0; i < box.site_count(); ++i) {
    const MultiIndex x = box.site_at(i);
    out[i] = a.value_at(x) - b.value_at(x);
  }
  return out;
}

inline LatticeFunction scaled(const LatticeFunction& u, double c) {
  LatticeFunction out = u;
  for (double& v : out.values()) v *= c;
  return out;
}

inline LatticeFunction abs_of(const LatticeFunction& u) {
  LatticeFunction out = u;
  for (double& v : out.values()) v = std::abs(v);
  return out;
}

// amplitude * exp(-|i|^2 / width), radially decreasing and strictly positive.
inline LatticeFunction gaussian_bump(const LatticeBox& box, double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: need width > 0");
  LatticeFunction out(box);
  const MultiIndex origin(static_cast<std::size_t>(box.dim()), 0);
  for (std::int64_t i = 0; i < box.site_count(); ++i) {
    const double sq = static_cast<double>(squared_euclidean(box.site_at(i), origin));
    out[i] = amplitude * std::exp(-sq / width);
  }
  return out;
}

struct Recentered {
  LatticeFunction fn;
  MultiIndex shift;  // the located maximum site, so fn(i) = u(i + shift)
};

// Translate a site of maximal |u| to the origin. Ties resolve to the
// lexicographically smallest multi-index (the first one in storage order).
inline Recentered recenter(const LatticeFunction& u) {
  if (u.is_zero()) throw std::invalid_argument("recenter: zero function");
  std::int64_t best = 0;
  double best_abs = -1.0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  MultiIndex peak = u.box().site_at(best);
  bool centered = true;
  for (int c : peak)
    if (c != 0) centered = false;
  if (centered) return {u, peak};
  MultiIndex neg(peak.size());
  for (std::size_t k = 0; k < peak.size(); ++k) neg[k] = -peak[k];
  return {translate(u, neg), peak};
}

}  // namespace lattice_extremal
