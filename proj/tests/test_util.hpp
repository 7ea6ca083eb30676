#pragma once

// Plain-loop reference computations the tests check the library against.
// These stay deliberately naive and independent of the library's summation
// strategy.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <vector>

#include "lattice_extremal/lattice_extremal.hpp"

namespace oracle {

using lattice_extremal::LatticeBox;
using lattice_extremal::LatticeFunction;
using lattice_extremal::MultiIndex;

inline double lp_norm(const LatticeFunction& u, double p) {
  double s = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) s += std::pow(std::abs(u[i]), p);
  return std::pow(s, 1.0 / p);
}

// double sum over ordered adjacent pairs with zero extension, one pair at a
// time over the box enlarged by one ring
inline double d1p_pow(const LatticeFunction& u, double p) {
  const LatticeBox ext(u.dim(), u.box().radius() + 1);
  double s = 0.0;
  for (std::int64_t i = 0; i < ext.site_count(); ++i) {
    MultiIndex x = ext.site_at(i);
    const double ux = u.value_at(x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (int d : {-1, +1}) {
        x[k] += d;
        s += std::pow(std::abs(u.value_at(x) - ux), p);
        x[k] -= d;
      }
    }
  }
  return s;
}

// per-site p-laplacian by direct neighbor loop
inline double p_laplacian_at(const LatticeFunction& u, const MultiIndex& x, double p) {
  const double ux = u.value_at(x);
  double s = 0.0;
  MultiIndex y = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int d : {-1, +1}) {
      y[k] = x[k] + d;
      const double diff = u.value_at(y) - ux;
      if (diff != 0.0) s += std::pow(std::abs(diff), p - 2.0) * diff;
      y[k] = x[k];
    }
  }
  return s;
}

// breadth-first search distance inside a generously sized box
inline long bfs_distance(const MultiIndex& from, const MultiIndex& to, int radius) {
  const LatticeBox box(static_cast<int>(from.size()), radius);
  std::map<MultiIndex, long> dist;
  std::deque<MultiIndex> queue;
  dist[from] = 0;
  queue.push_back(from);
  while (!queue.empty()) {
    MultiIndex x = queue.front();
    queue.pop_front();
    if (x == to) return dist[x];
    MultiIndex y = x;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (int d : {-1, +1}) {
        y[k] = x[k] + d;
        if (box.contains(y) && dist.find(y) == dist.end()) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
        y[k] = x[k];
      }
    }
  }
  return -1;
}

// coordinate permutation plus per-axis sign flips; a lattice isometry fixing 0
inline LatticeFunction apply_isometry(const LatticeFunction& u, const std::vector<int>& perm,
                                      const std::vector<int>& flips) {
  LatticeFunction out(u.box());
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const MultiIndex x = u.box().site_at(i);
    MultiIndex y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
      y[k] = flips[k] * x[static_cast<std::size_t>(perm[k])];
    out.set(y, u[i]);
  }
  return out;
}

inline double rel_diff(double a, double b) {
  const double d = std::abs(a - b);
  const double m = std::max(std::abs(a), std::abs(b));
  return m > 0.0 ? d / m : d;
}

}  // namespace oracle
