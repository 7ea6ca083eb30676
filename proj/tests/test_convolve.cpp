#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lattice_extremal/lattice_extremal.hpp"
#include "test_util.hpp"

using namespace lattice_extremal;

namespace {

double sup_rel_diff(const LatticeFunction& a, const LatticeFunction& b) {
  double scale = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(a[i]));
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return scale > 0.0 ? m / scale : m;
}

}  // namespace

TEST_CASE("convolving a delta reproduces the kernel column") {
  LatticeFunction d = unit_delta(3, 2);
  for (auto method : {ConvMethod::direct, ConvMethod::fft}) {
    LatticeFunction a = riesz_convolve(d, 1.5, method);
    REQUIRE(a.box() == d.box());
    CHECK(std::abs(a.value_at({0, 0, 0})) < 1e-12);
    const RieszKernel k(3, 1.5);
    for (std::int64_t i = 0; i < a.size(); ++i) {
      const MultiIndex x = a.box().site_at(i);
      CHECK(std::abs(a[i] - k(x)) < 1e-12);
    }
  }
}

TEST_CASE("two atoms at unit distance") {
  LatticeFunction f(make_box(3, 2));
  f.set({0, 0, 0}, 1.0);
  f.set({1, 0, 0}, 1.0);
  for (double lambda : {0.7, 2.2}) {
    LatticeFunction a = riesz_convolve(f, lambda, ConvMethod::direct);
    CHECK(a.value_at({0, 0, 0}) == Catch::Approx(1.0).epsilon(1e-13));  // only the unit-distance atom
  }
}

TEST_CASE("fft path matches the direct path") {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    LatticeFunction f = random_function(rng, make_box(3, 3), -1.0, 1.0);
    for (double lambda : {1.0, 2.0, 2.5}) {
      LatticeFunction a = riesz_convolve(f, lambda, ConvMethod::direct);
      LatticeFunction b = riesz_convolve(f, lambda, ConvMethod::fft);
      CHECK(sup_rel_diff(a, b) < 1e-10);
    }
  }
  // enlarged output window
  LatticeFunction f = random_function(rng, make_box(2, 2), -1.0, 1.0);
  LatticeFunction a = riesz_convolve(f, 1.2, ConvMethod::direct, 5);
  LatticeFunction b = riesz_convolve(f, 1.2, ConvMethod::fft, 5);
  REQUIRE(a.box().radius() == 5);
  CHECK(sup_rel_diff(a, b) < 1e-10);
}

TEST_CASE("convolution is linear and positivity-preserving") {
  Rng rng(32);
  LatticeFunction f = random_function(rng, make_box(2, 2), -1.0, 1.0);
  LatticeFunction g = random_function(rng, make_box(2, 2), -1.0, 1.0);
  LatticeFunction sum = add(scaled(f, 2.0), g);
  LatticeFunction a = riesz_convolve(sum, 1.3, ConvMethod::direct);
  LatticeFunction af = riesz_convolve(f, 1.3, ConvMethod::direct);
  LatticeFunction ag = riesz_convolve(g, 1.3, ConvMethod::direct);
  for (std::int64_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - (2.0 * af[i] + ag[i])) < 1e-12);

  // nonnegative f with at least two support sites spreads positive mass
  LatticeFunction pos(make_box(2, 2));
  pos.set({0, 0}, 1.0);
  pos.set({1, 1}, 0.5);
  LatticeFunction ap = riesz_convolve(pos, 1.0, ConvMethod::direct);
  for (std::int64_t i = 0; i < ap.size(); ++i) CHECK(ap[i] > 0.0);
}

TEST_CASE("convolution as a bilinear form is symmetric") {
  Rng rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    LatticeFunction f = random_function(rng, make_box(2, 2), -1.0, 1.0);
    LatticeFunction g = random_function(rng, make_box(2, 2), -1.0, 1.0);
    LatticeFunction af = riesz_convolve(f, 1.0, ConvMethod::direct);
    LatticeFunction ag = riesz_convolve(g, 1.0, ConvMethod::direct);
    double gaf = 0.0, fag = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
      gaf += g[i] * af[i];
      fag += f[i] * ag[i];
    }
    CHECK(oracle::rel_diff(gaf, fag) < 1e-11);
  }
}

TEST_CASE("convolution commutes with lattice isometries") {
  Rng rng(34);
  LatticeFunction f = random_function(rng, make_box(3, 2), -1.0, 1.0);
  const std::vector<int> perm = {2, 0, 1};
  const std::vector<int> flips = {-1, 1, -1};
  LatticeFunction a1 = oracle::apply_isometry(riesz_convolve(f, 1.8, ConvMethod::direct), perm, flips);
  LatticeFunction a2 = riesz_convolve(oracle::apply_isometry(f, perm, flips), 1.8, ConvMethod::direct);
  for (std::int64_t i = 0; i < a1.size(); ++i) CHECK(std::abs(a1[i] - a2[i]) < 1e-12);
}

TEST_CASE("lambda outside (0, N) is rejected") {
  LatticeFunction d = unit_delta(2, 1);
  CHECK_THROWS_AS(riesz_convolve(d, 0.0, ConvMethod::direct), std::invalid_argument);
  CHECK_THROWS_AS(riesz_convolve(d, 2.0, ConvMethod::direct), std::invalid_argument);
  CHECK_THROWS_AS(riesz_convolve(d, -1.0, ConvMethod::fft), std::invalid_argument);
}

TEST_CASE("custom kernels run through the same machinery") {
  // gaussian offset kernel with an excluded diagonal
  const auto kernel = [](const MultiIndex& d) {
    const std::int64_t sq = squared_euclidean(d, MultiIndex(d.size(), 0));
    return sq == 0 ? 0.0 : std::exp(-0.5 * static_cast<double>(sq));
  };
  Rng rng(36);
  LatticeFunction f = random_function(rng, make_box(2, 3), -1.0, 1.0);
  LatticeFunction a = kernel_convolve(f, kernel, ConvMethod::direct);
  LatticeFunction b = kernel_convolve(f, kernel, ConvMethod::fft);
  CHECK(sup_rel_diff(a, b) < 1e-10);
  // hand-check one site against the definition
  double expected = 0.0;
  const MultiIndex target{1, -2};
  for (std::int64_t j = 0; j < f.size(); ++j) {
    const MultiIndex x = f.box().site_at(j);
    const MultiIndex diff{target[0] - x[0], target[1] - x[1]};
    expected += f[j] * kernel(diff);
  }
  CHECK(a.value_at(target) == Catch::Approx(expected).epsilon(1e-13));
}

TEST_CASE("direct convolution is identical for every thread count") {
  Rng rng(35);
  LatticeFunction f = random_function(rng, make_box(3, 3), -1.0, 1.0);
  set_thread_count(1);
  LatticeFunction a = riesz_convolve(f, 2.0, ConvMethod::direct);
  set_thread_count(4);
  LatticeFunction b = riesz_convolve(f, 2.0, ConvMethod::direct);
  set_thread_count(0);
  CHECK(a.values() == b.values());
}
