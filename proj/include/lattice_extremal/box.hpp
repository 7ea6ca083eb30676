#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

namespace lattice_extremal {

using MultiIndex = std::vector<int>;

// Finite window [-R, R]^N of the integer lattice Z^N. Sites map to linear
// storage indices row-major with the last axis fastest, so linear order is
// lexicographic order on the multi-index.
class LatticeBox {
 public:
  static constexpr std::int64_t kDefaultMaxSites = std::int64_t{1} << 27;

  LatticeBox(int dim, int radius, std::int64_t max_sites = kDefaultMaxSites)
      : dim_(dim), radius_(radius) {
    if (dim < 1) throw std::invalid_argument("LatticeBox: dim must be >= 1");
    if (radius < 0) throw std::invalid_argument("LatticeBox: radius must be >= 0");
    if (max_sites < 1) throw std::invalid_argument("LatticeBox: bad site cap");
    const std::int64_t ext = extent();
    std::int64_t n = 1;
    for (int k = 0; k < dim; ++k) {
      if (n > max_sites / ext)
        throw std::invalid_argument("LatticeBox: site count exceeds the memory cap");
      n *= ext;
    }
    count_ = n;
    strides_.assign(static_cast<std::size_t>(dim), 1);
    for (int k = dim - 2; k >= 0; --k)
      strides_[static_cast<std::size_t>(k)] = strides_[static_cast<std::size_t>(k + 1)] * ext;
  }

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  std::int64_t extent() const { return 2 * static_cast<std::int64_t>(radius_) + 1; }
  std::int64_t site_count() const { return count_; }
  std::int64_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  bool contains(const MultiIndex& x) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    for (int c : x)
      if (c < -radius_ || c > radius_) return false;
    return true;
  }

  std::int64_t index_of(const MultiIndex& x) const {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("LatticeBox::index_of: wrong arity");
    std::int64_t idx = 0;
    for (int k = 0; k < dim_; ++k) {
      if (x[static_cast<std::size_t>(k)] < -radius_ || x[static_cast<std::size_t>(k)] > radius_)
        throw std::out_of_range("LatticeBox::index_of: site outside the box");
      idx += (x[static_cast<std::size_t>(k)] + radius_) * stride(k);
    }
    return idx;
  }

  MultiIndex site_at(std::int64_t idx) const {
    MultiIndex x(static_cast<std::size_t>(dim_));
    for (int k = 0; k < dim_; ++k) x[static_cast<std::size_t>(k)] = coord(idx, k);
    return x;
  }

  // Coordinate along one axis decoded straight from the linear index.
  int coord(std::int64_t idx, int axis) const {
    return static_cast<int>((idx / stride(axis)) % extent()) - radius_;
  }

  // l1 distance of the site from the origin, without materializing the index.
  long l1_from_origin(std::int64_t idx) const {
    long d = 0;
    for (int k = 0; k < dim_; ++k) d += std::labs(coord(idx, k));
    return d;
  }

  bool operator==(const LatticeBox& o) const { return dim_ == o.dim_ && radius_ == o.radius_; }
  bool operator!=(const LatticeBox& o) const { return !(*this == o); }

 private:
  int dim_;
  int radius_;
  std::int64_t count_ = 0;
  std::vector<std::int64_t> strides_;
};

inline LatticeBox make_box(int dim, int radius,
                           std::int64_t max_sites = LatticeBox::kDefaultMaxSites) {
  return LatticeBox(dim, radius, max_sites);
}

// Shortest-path length in the lattice graph: the l1 distance.
inline long combinatorial_distance(const MultiIndex& x, const MultiIndex& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("combinatorial_distance: arity mismatch");
  long d = 0;
  for (std::size_t k = 0; k < x.size(); ++k)
    d += std::labs(static_cast<long>(x[k]) - static_cast<long>(y[k]));
  return d;
}

inline std::int64_t squared_euclidean(const MultiIndex& x, const MultiIndex& y) {
  if (x.size() != y.size()) throw std::invalid_argument("squared_euclidean: arity mismatch");
  std::int64_t s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::int64_t d = static_cast<std::int64_t>(x[k]) - y[k];
    s += d * d;
  }
  return s;
}

inline double euclidean_distance(const MultiIndex& x, const MultiIndex& y) {
  return std::sqrt(static_cast<double>(squared_euclidean(x, y)));
}

using SiteSet = std::vector<MultiIndex>;  // kept sorted and unique

// { x not in Omega : exists y in Omega with x ~ y }, possibly empty.
inline SiteSet vertex_boundary(const SiteSet& omega) {
  std::set<MultiIndex> inside(omega.begin(), omega.end());
  std::set<MultiIndex> out;
  for (const MultiIndex& x : omega) {
    MultiIndex y = x;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (int d : {-1, +1}) {
        y[k] = x[k] + d;
        if (inside.find(y) == inside.end()) out.insert(y);
      }
      y[k] = x[k];
    }
  }
  return SiteSet(out.begin(), out.end());
}

}  // namespace lattice_extremal
