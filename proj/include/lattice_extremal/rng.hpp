#pragma once

#include <cstdint>
#include <random>

#include "function.hpp"

namespace lattice_extremal {

// mt19937_64 with hand-rolled uniforms, so the same seed produces the same
// stream on every platform (std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0, 1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive range
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

inline LatticeFunction random_function(Rng& rng, const LatticeBox& box, double lo, double hi) {
  LatticeFunction u(box);
  for (std::int64_t i = 0; i < box.site_count(); ++i) u[i] = rng.uniform(lo, hi);
  return u;
}

}  // namespace lattice_extremal
