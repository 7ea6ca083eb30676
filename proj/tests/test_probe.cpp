#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lattice_extremal/lattice_extremal.hpp"
#include "test_util.hpp"

using namespace lattice_extremal;

namespace {
LatticeFunction probe_bump() { return gaussian_bump(LatticeBox(3, 6), 3.0, 6.0); }
}  // namespace

TEST_CASE("zero data stays at equilibrium") {
  const LatticeFunction z(make_box(3, 3));
  const auto rep = run_blowup(3, 2.5, z, 0.0, 50);
  CHECK(rep.outcome == BlowupOutcome::no_blow_up);
  for (const auto& pt : rep.trajectory) CHECK(pt.sup_norm == 0.0);
}

TEST_CASE("bump data inside the window blows up") {
  const auto rep = run_blowup(3, 2.5, probe_bump(), 0.0, 100000);
  CHECK(rep.outcome == BlowupOutcome::blow_up);
  CHECK(rep.in_fujita_window);
  CHECK(rep.window_value == Catch::Approx(1.5));
  CHECK(rep.final_sup >= 1e6);
  CHECK(rep.steps < 100000);
  // sup-norm trace ends above the cap and the trajectory has every step
  REQUIRE(rep.trajectory.size() == static_cast<std::size_t>(rep.steps) + 1);
}

TEST_CASE("outside the window with small data: report only") {
  const LatticeFunction small = gaussian_bump(LatticeBox(3, 4), 0.2, 4.0);
  const auto rep = run_blowup(3, 4.0, small, 0.0, 5000);
  CHECK_FALSE(rep.in_fujita_window);
  CHECK(rep.window_value == Catch::Approx(6.0));
  CHECK(rep.outcome == BlowupOutcome::no_blow_up);  // it decays here
  CHECK(rep.final_sup < 0.2);
}

TEST_CASE("scaling up the data never slows the blow-up") {
  const auto base = run_blowup(3, 2.5, probe_bump(), 0.0, 100000);
  for (double c : {1.2, 1.5, 2.0}) {
    const auto faster = run_blowup(3, 2.5, scaled(probe_bump(), c), 0.0, 100000);
    REQUIRE(faster.outcome == BlowupOutcome::blow_up);
    CHECK(faster.steps <= base.steps + 2);
  }
}

TEST_CASE("the cap choice barely moves the blow-up step under a fixed dt") {
  long steps_at[3];
  int i = 0;
  for (double cap : {1e4, 1e6, 1e8}) {
    const auto rep = run_blowup(3, 2.5, probe_bump(), 0.01, 100000, cap);
    REQUIRE(rep.outcome == BlowupOutcome::blow_up);
    steps_at[i++] = rep.steps;
  }
  CHECK(steps_at[0] <= steps_at[1]);
  CHECK(steps_at[1] <= steps_at[2]);
  CHECK(steps_at[2] - steps_at[0] <= 8);  // doubly exponential endgame
}

TEST_CASE("instability is reported as integrator failure, not blow-up") {
  const auto rep = run_blowup(2, 3.0, unit_delta(2, 2), 10.0, 50);
  CHECK(rep.outcome == BlowupOutcome::integrator_failure);
}

TEST_CASE("pointwise bound checker") {
  SECTION("zero field has no violations") {
    CHECK(check_bound_lemma(LatticeFunction(make_box(3, 2)), 2.0, 1e-6).empty());
  }
  SECTION("a half-height delta fails the residual gate and is skipped") {
    const LatticeFunction u = scaled(unit_delta(3, 2), 0.5);
    // residual at the origin is |0.5 - 0.25| = 0.25 >> 1e-6, so nothing is checked there
    CHECK(check_bound_lemma(u, 2.0, 1e-6).empty());
  }
  SECTION("rejections") {
    LatticeFunction bad(make_box(2, 1));
    bad.set({0, 0}, -1.0);
    CHECK_THROWS_AS(check_bound_lemma(bad, 2.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(check_bound_lemma(unit_delta(2, 1), 1.0, 1e-6), std::invalid_argument);
  }
  SECTION("randomized falsification search comes up empty") {
    Rng rng(71);
    for (int trial = 0; trial < 1000; ++trial) {
      const LatticeFunction u = abs_of(random_function(rng, make_box(3, 1), -2.0, 2.0));
      CHECK(check_bound_lemma(u, 2.0, 1e-6).empty());
    }
  }
}
