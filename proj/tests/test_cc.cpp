#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lattice_extremal/lattice_extremal.hpp"
#include "test_util.hpp"

using namespace lattice_extremal;

namespace {

LatticeFunction small_bump() { return gaussian_bump(make_box(3, 2), 1.0, 2.0); }

// a second bump far out along the first axis, two rings clear of the first
LatticeFunction far_bump(int offset) {
  return translate(gaussian_bump(make_box(3, 2), 0.7, 1.5), {offset, 0, 0});
}

}  // namespace

TEST_CASE("sequence construction sanity") {
  CHECK_THROWS_AS(FunctionSequence({}, LatticeFunction(make_box(3, 0))),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      FunctionSequence({LatticeFunction(make_box(2, 1))}, LatticeFunction(make_box(3, 0))),
      std::invalid_argument);
  const auto seq = stationary_sequence(small_bump(), 4);
  CHECK(seq.prefix_length() == 4);
  CHECK(seq.max_d1p(2.0) == Catch::Approx(d1p_norm(small_bump(), 2.0)));
}

TEST_CASE("brezis-lieb defects vanish exactly for stationary sequences") {
  const auto seq = stationary_sequence(small_bump(), 5);
  for (double p : {1.0, 2.0, 3.5})
    for (double d : bl_defect(seq, p, BLMode::values)) CHECK(d == 0.0);
  for (double p : {1.0, 2.0})
    for (double d : bl_defect(seq, p, BLMode::gradients)) CHECK(d == 0.0);
}

TEST_CASE("brezis-lieb defects vanish exactly for separated splits") {
  // fixed part + escaping bubble; supports two rings apart from step one
  const auto seq = escape_sum_sequence(small_bump(), far_bump(0), 6, 8);
  for (double p : {1.0, 2.0, 2.7}) {
    for (double d : bl_defect(seq, p, BLMode::values)) CHECK(d == 0.0);
  }
  for (double d : bl_defect(seq, 2.0, BLMode::gradients)) CHECK(d == 0.0);

  // escaping-only: the limit is zero, and the defect telescopes exactly
  const auto esc = escaping_sequence(far_bump(0), 5, 9);
  for (double d : bl_defect(esc, 2.0, BLMode::values)) CHECK(d == 0.0);
  for (double d : bl_defect(esc, 2.0, BLMode::gradients)) CHECK(d == 0.0);
}

TEST_CASE("disjoint perturbation defects vanish for every n") {
  const auto seq = perturbation_sequence(small_bump(), far_bump(9), 20);
  for (double p : {2.0, 3.0}) {
    for (double d : bl_defect(seq, p, BLMode::values)) CHECK(d == 0.0);
    for (double d : bl_defect(seq, p, BLMode::gradients)) CHECK(d == 0.0);
  }
}

TEST_CASE("overlapping perturbation defects decay at the first-order rate") {
  // u and w share support, so the defect is 2 <u, w> / n + O(rounding) at p = 2
  const LatticeFunction u = small_bump();
  Rng rng(61);
  const LatticeFunction w = random_function(rng, u.box(), 0.1, 1.0);
  const auto seq = perturbation_sequence(u, w, 100);
  const auto defects = bl_defect(seq, 2.0, BLMode::values);
  double inner = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) inner += u[i] * w[i];
  CHECK(defects[0] == Catch::Approx(2.0 * inner).epsilon(1e-10));
  CHECK(defects[99] == Catch::Approx(2.0 * inner / 100.0).epsilon(1e-8));
  CHECK(defects[99] < defects[0]);
}

TEST_CASE("tail masses") {
  SECTION("delta tails") {
    const LatticeFunction d = unit_delta(3, 1);
    auto [mu0, nu0] = tail_mass(d, 0, 2.0, 7.0);
    CHECK(mu0 == 6.0);  // 2N unit differences seen from the neighbors
    CHECK(nu0 == 0.0);
    auto [mu1, nu1] = tail_mass(d, 1, 2.0, 7.0);
    CHECK(mu1 == 0.0);
    CHECK(nu1 == 0.0);
  }
  SECTION("monotone nonincreasing in R, zero past N*radius + 1") {
    Rng rng(62);
    const LatticeFunction u = random_function(rng, make_box(2, 3), -1.0, 1.0);
    double prev_mu = -1.0, prev_nu = -1.0;
    for (long R = 0; R <= 8; ++R) {
      auto [mu, nu] = tail_mass(u, R, 2.0, 4.0);
      if (R > 0) {
        CHECK(mu <= prev_mu);
        CHECK(nu <= prev_nu);
      }
      prev_mu = mu;
      prev_nu = nu;
    }
    auto [mu_far, nu_far] = tail_mass(u, 2 * 3 + 1, 2.0, 4.0);
    CHECK(mu_far == 0.0);
    CHECK(nu_far == 0.0);
  }
}

TEST_CASE("composition identities on constructed sequences") {
  const SobolevParams prm(3, 2.0, 7.0);
  SECTION("stationary: gaps equal the tails, vanishing past the support") {
    const LatticeFunction u = small_bump();
    const auto seq = stationary_sequence(u, 3);
    auto [g1_near, g2_near] = composition_check(seq, prm, 1);
    auto [mu1, nu1] = tail_mass(u, 1, prm.p, prm.q);
    CHECK(g1_near == Catch::Approx(mu1));
    CHECK(g2_near == Catch::Approx(nu1));
    auto [g1, g2] = composition_check(seq, prm, 3 * 2 + 1);
    CHECK(g1 == 0.0);
    CHECK(g2 == 0.0);
  }
  SECTION("fixed part plus escaping bubble: exact split") {
    // u lives within l1 radius 6 (+1 for gradients); the bubble's closest
    // approach at the last term is far beyond r_max = 8
    const auto seq = escape_sum_sequence(small_bump(), far_bump(0), 4, 10);
    auto [g1, g2] = composition_check(seq, prm, 8);
    CHECK(g1 == 0.0);
    CHECK(g2 == 0.0);
  }
  SECTION("escaping-only: the tail carries the whole mass") {
    const LatticeFunction w = far_bump(0);
    const auto seq = escaping_sequence(w, 4, 10);
    auto [g1, g2] = composition_check(seq, prm, 8);
    CHECK(g1 == 0.0);
    CHECK(g2 == 0.0);
    // and the tail itself equals the bubble's full masses
    auto [mu, nu] = tail_mass(seq.terms.back(), 8, prm.p, prm.q);
    CHECK(oracle::rel_diff(mu, d1p_norm_pow(w, prm.p)) < 1e-13);
    CHECK(oracle::rel_diff(nu, lp_norm_pow(w, prm.q)) < 1e-13);
  }
}

TEST_CASE("concentration-compactness inequality margins") {
  const SobolevParams prm(3, 2.0, 7.0);
  ExtremalResult sol = minimize_on_box(prm, LatticeBox(3, 2));

  SECTION("compact sequence: both tails vanish") {
    const auto seq = stationary_sequence(small_bump(), 3);
    CHECK(cc_inequality_check(seq, prm, sol.constant_estimate, 3 * 2 + 1) == 0.0);
  }
  SECTION("escaping extremizer: equality within solver tolerance") {
    const auto seq = escaping_sequence(sol.extremizer, 4, 12);
    const double margin = cc_inequality_check(seq, prm, sol.constant_estimate, 7);
    CHECK(margin >= -1e-9);
    CHECK(margin <= 1e-6);
  }
  SECTION("escaping random bumps: never negative beyond slack") {
    Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) {
      LatticeFunction w = abs_of(random_function(rng, make_box(3, 2), -1.0, 1.0));
      const auto seq = escaping_sequence(w, 3, 12);
      CHECK(cc_inequality_check(seq, prm, sol.constant_estimate, 7) >= -1e-9);
    }
  }
}

TEST_CASE("cc report bundles the diagnostics") {
  const SobolevParams prm(3, 2.0, 7.0);
  const auto seq = escape_sum_sequence(small_bump(), far_bump(0), 3, 10);
  const CCReport rep = make_cc_report(seq, prm, 8.0, 8);
  CHECK(rep.prefix_len == 3);
  CHECK(rep.radii.size() == 9);
  REQUIRE(rep.mu_tail.size() == 3);
  for (const auto& row : rep.mu_tail)
    for (std::size_t i = 1; i < row.size(); ++i) CHECK(row[i] <= row[i - 1]);
  CHECK(rep.gap1 == 0.0);
  CHECK(rep.gap2 == 0.0);
}
