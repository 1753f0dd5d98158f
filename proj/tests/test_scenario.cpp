// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qcorr/certify.hpp"
#include "qcorr/families.hpp"
#include "qcorr/scenario.hpp"

using namespace qcorr;

TEST_CASE("pm_table on the BB84 strategy") {
  const NamedStrategy s = bb84_strategy();
  const SequentialTable t = pm_table(*s.preps, s.bob);
  CHECK(t.at(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));  // eigenstate
  CHECK(t.at(0, 0, 1, 0) == doctest::Approx(0.5));                 // unbiased bases
}

TEST_CASE("pm_table on the RAC-optimal strategy hits all events equally") {
  const NamedStrategy s = rac_optimal_strategy();
  const SequentialTable t = pm_table(*s.preps, s.bob);
  const double expected = 0.5 * (1.0 + 1.0 / std::sqrt(2.0));
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y) {
        const int target = (y == 0) ? x0 : x1;
        CHECK(t.at(x0, x1, y, target) == doctest::Approx(expected).epsilon(1e-13));
      }
}

TEST_CASE("pm_table equals the Bloch inner-product formula for sharp meas") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    std::array<QubitDensity, 4> preps = {
        testing::random_qubit(rng), testing::random_qubit(rng),
        testing::random_qubit(rng), testing::random_qubit(rng)};
    const auto meas = testing::random_sharp_pair(rng);
    const SequentialTable t = pm_table(preps, meas);
    for (int x0 = 0; x0 < 2; ++x0)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int y = 0; y < 2; ++y) {
          const BlochVector s = density_to_bloch(preps[2 * x0 + x1]);
          const double expect = 0.5 * (1.0 + s.dot(meas[y].direction()));
          CHECK(t.at(x0, x1, y, 0) == doctest::Approx(expect).epsilon(1e-12));
        }
  }
}

TEST_CASE("steering the singlet gives antiparallel conditionals") {
  const TwoQubitDensity w1 = werner_state(1.0);
  const auto alice = std::array<BinaryPovm, 2>{BinaryPovm::sharp({0, 0, 1}),
                                               BinaryPovm::sharp({1, 0, 0})};
  const Assemblage asm_ = steer_assemblage(w1, alice);
  // Outcome 0 of the +z measurement leaves Bob in |1><1| / 2.
  const Mat2 expected =
      complex_t(0.25) * (Mat2::identity() - pauli_z());
  CHECK(asm_.at(0, 0).max_abs_diff(expected) < 1e-13);
  const Mat2 expected1 =
      complex_t(0.25) * (Mat2::identity() + pauli_z());
  CHECK(asm_.at(1, 0).max_abs_diff(expected1) < 1e-13);
}

TEST_CASE("trivial measurements steer to the reduced state") {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const TwoQubitDensity rho = testing::random_two_qubit(rng);
    const BinaryPovm trivial = BinaryPovm::unsharp(0.0, {0, 0, 1});
    const Assemblage asm_ = steer_assemblage(rho, {trivial, trivial});
    const Mat2 half_reduced = complex_t(0.5) * partial_trace_first(rho).op();
    for (int x0 = 0; x0 < 2; ++x0)
      for (int x1 = 0; x1 < 2; ++x1)
        CHECK(asm_.at(x1, x0).max_abs_diff(half_reduced) < 1e-13);
  }
}

TEST_CASE("steering the maximally mixed state") {
  const TwoQubitDensity id = canonical_two_qubit({0, 0, 0}, {0, 0, 0}, {0, 0, 0});
  Rng rng(33);
  const auto alice = testing::random_povm_pair(rng);
  const Assemblage asm_ = steer_assemblage(id, alice);
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      const double w = asm_.at(x1, x0).trace().real();
      const Mat2 expected = complex_t(0.5 * w) * Mat2::identity();
      CHECK(asm_.at(x1, x0).max_abs_diff(expected) < 1e-13);
    }
}

TEST_CASE("the maximally mixed state yields flat tables") {
  const TwoQubitDensity id = canonical_two_qubit({0, 0, 0}, {0, 0, 0}, {0, 0, 0});
  Rng rng(37);
  const auto alice = testing::random_povm_pair(rng);
  const auto bob = testing::random_povm_pair(rng);

  const ConditionalTable ct = conditional_table(steer_assemblage(id, alice), bob);
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y)
        CHECK(ct.pb[x0][x1][y][0] ==
              doctest::Approx(bob[y].gamma(0)).epsilon(1e-12));

  const auto sharp_a = testing::random_sharp_pair(rng);
  const auto sharp_b = testing::random_sharp_pair(rng);
  const Box box = box_from_state(id, sharp_a, sharp_b);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          CHECK(box.p[x][y][a][b] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("assemblages are nonsignaling for random states and POVMs") {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const TwoQubitDensity rho = testing::random_two_qubit(rng);
    const Assemblage asm_ = steer_assemblage(rho, testing::random_povm_pair(rng));
    const Mat2 s0 = asm_.at(0, 0) + asm_.at(1, 0);
    const Mat2 s1 = asm_.at(0, 1) + asm_.at(1, 1);
    CHECK(s0.max_abs_diff(s1) < 1e-10);
  }
}

TEST_CASE("conditional_table of the Werner state at V = 1") {
  const auto meas = white_noise_bb84_measurements();
  const Assemblage asm_ = steer_assemblage(werner_state(1.0), meas.alice);
  const ConditionalTable ct = conditional_table(asm_, meas.bob);
  const Box expected = white_noise_bb84_box(1.0);
  const ConditionalTable from_box = box_to_conditional(expected);
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      CHECK(ct.pa[x0][x1] == doctest::Approx(0.5).epsilon(1e-13));
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b)
          CHECK(ct.pb[x0][x1][y][b] ==
                doctest::Approx(from_box.pb[x0][x1][y][b]).epsilon(1e-12));
    }
}

TEST_CASE("product states give preparation-independent conditionals") {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const QubitDensity rho_a = testing::random_qubit(rng);
    const QubitDensity rho_b = testing::random_qubit(rng);
    const TwoQubitDensity rho(tensor(rho_a.op(), rho_b.op()));
    const auto alice = testing::random_povm_pair(rng);
    const auto bob = testing::random_povm_pair(rng);
    const ConditionalTable ct = conditional_table(steer_assemblage(rho, alice), bob);
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) {
        const double ref = ct.pb[0][0][y][b];
        for (int x0 = 0; x0 < 2; ++x0)
          for (int x1 = 0; x1 < 2; ++x1)
            CHECK(ct.pb[x0][x1][y][b] == doctest::Approx(ref).epsilon(1e-11));
      }
  }
}

TEST_CASE("conditional_table rejects vanishing conditioning probabilities") {
  // Sharp z measurement on a pure product state pointing along +z: outcome 1
  // never occurs.
  const QubitDensity up = bloch_to_density({0, 0, 1});
  const QubitDensity any = bloch_to_density({0.3, 0.1, 0.2});
  const TwoQubitDensity rho(tensor(up.op(), any.op()));
  const auto alice = std::array<BinaryPovm, 2>{BinaryPovm::sharp({0, 0, 1}),
                                               BinaryPovm::sharp({1, 0, 0})};
  const Assemblage asm_ = steer_assemblage(rho, alice);
  Rng rng(47);
  CHECK_THROWS_AS(conditional_table(asm_, testing::random_povm_pair(rng)),
                  ZeroConditioningProbability);
}

TEST_CASE("box_from_state reproduces the white-noise BB84 family") {
  const auto meas = white_noise_bb84_measurements();
  for (double v : {0.0, 0.25, 0.5, 0.73, 1.0}) {
    const Box got = box_from_state(werner_state(v), meas.alice, meas.bob);
    const Box expected = white_noise_bb84_box(v);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            CHECK(got.p[x][y][a][b] ==
                  doctest::Approx(expected.p[x][y][a][b]).epsilon(1e-13));
  }
}

TEST_CASE("the singlet anticorrelates along equal directions") {
  const TwoQubitDensity w1 = werner_state(1.0);
  Rng rng(53);
  for (int i = 0; i < 20; ++i) {
    const BlochVector dir = rng.unit_vector();
    const auto m = std::array<BinaryPovm, 2>{BinaryPovm::sharp(dir),
                                             BinaryPovm::sharp(rng.unit_vector())};
    const Box box = box_from_state(w1, m, m);
    CHECK(box.p[0][0][0][0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(box.p[0][0][1][1] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("box_from_state output is nonsignaling") {
  Rng rng(59);
  for (int i = 0; i < 500; ++i) {
    const TwoQubitDensity rho = testing::random_two_qubit(rng);
    const Box box = box_from_state(rho, testing::random_povm_pair(rng),
                                   testing::random_povm_pair(rng));
    CHECK_NOTHROW(box.validate());
  }
}

TEST_CASE("box <-> conditional round trip") {
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) {
    const Box box = testing::random_ns_box(rng, /*local_only=*/false);
    bool degenerate = false;
    for (int x = 0; x < 2 && !degenerate; ++x)
      for (int a = 0; a < 2 && !degenerate; ++a)
        if (box.marginal_a(x, a) <= 1e-12) degenerate = true;
    if (degenerate) continue;
    const Box back = conditional_to_box(box_to_conditional(box));
    CHECK(box_l1_distance(box, back) < 1e-12);
  }
}

TEST_CASE("uncorrelated boxes have outcome-independent conditionals") {
  Rng rng(67);
  for (int i = 0; i < 50; ++i) {
    double pa[2] = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
    double pb[2] = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
    Box box;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            box.p[x][y][a][b] = (a == 0 ? pa[x] : 1 - pa[x]) * (b == 0 ? pb[y] : 1 - pb[y]);
    const ConditionalTable ct = box_to_conditional(box);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b)
          CHECK(ct.pb[x][0][y][b] == doctest::Approx(ct.pb[x][1][y][b]).epsilon(1e-12));
  }
}

TEST_CASE("box validation rejects out-of-range entries") {
  Box box = white_noise_bb84_box(0.5);
  // Context sums to 1 but holds entries outside [0, 1].
  box.p[0][0][0][0] = 1.2;
  box.p[0][0][0][1] = -0.2;
  box.p[0][0][1][0] = 0.0;
  box.p[0][0][1][1] = 0.0;
  CHECK_THROWS_AS(box.validate(), InvariantViolation);
}

TEST_CASE("white-noise BB84 conditionals take the closed form") {
  const double v = 0.8;
  const Box box = white_noise_bb84_box(v);
  const ConditionalTable ct = box_to_conditional(box);
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      CHECK(ct.pa[x0][x1] == doctest::Approx(0.5));
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) {
          const double sign = ((x1 + b + x0 * y) % 2 == 0) ? 1.0 : -1.0;
          const double expected = 0.5 * (1.0 + sign * (x0 == y ? v : 0.0));
          CHECK(ct.pb[x0][x1][y][b] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}
