// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "qcorr/algebra.hpp"

namespace qcorr {

// Index conventions, used everywhere below:
//   sequential tables   p(b | x0 x1, y)      -> p[x0][x1][y][b]
//   conditional tables  p(b | x1; x0, y)     -> pb[x0][x1][y][b], pa[x0][x1]
//   joint boxes         p(a, b | x, y)       -> p[x][y][a][b]
// The fixed map between the P&M label x0x1 and the steering labels is
// x0 = Alice's setting, x1 = Alice's outcome.

/// A pair of two-setting measurement assignments, one per party.
struct MeasurementPair {
  std::array<BinaryPovm, 2> alice;
  std::array<BinaryPovm, 2> bob;
};

/// Correlations p(b|x0x1,y) of the prepare-and-measure scenario.
struct SequentialTable {
  double p[2][2][2][2] = {};

  double at(int x0, int x1, int y, int b) const { return p[x0][x1][y][b]; }
  void validate() const;
};

/// Unnormalized conditional states sigma_{x1|x0} = p(x1|x0) rho_{x1|x0}
/// steered on Bob's side by Alice's measurements.
struct Assemblage {
  std::array<Mat2, 4> sigma{};  // index 2*x0 + x1

  const Mat2& at(int x1, int x0) const { return sigma[2 * x0 + x1]; }
  Mat2& at(int x1, int x0) { return sigma[2 * x0 + x1]; }
  void validate() const;
};

/// Bob-side conditionals p(b|x1;x0,y) together with Alice's outcome
/// probabilities p(x1|x0).
struct ConditionalTable {
  double pb[2][2][2][2] = {};  // [x0][x1][y][b]
  double pa[2][2] = {};        // [x0][x1]

  void validate() const;
};

/// Nonsignaling joint behaviour p(a,b|x,y).
struct Box {
  double p[2][2][2][2] = {};  // [x][y][a][b]

  double at(int x, int y, int a, int b) const { return p[x][y][a][b]; }
  /// Marginal p(a|x), averaged over y (the two agree up to the
  /// nonsignaling tolerance).
  double marginal_a(int x, int a) const;
  double marginal_b(int y, int b) const;
  /// Correlator E(x,y) = sum (-1)^(a+b) p(a,b|x,y).
  double correlator(int x, int y) const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// P&M correlations p(b|x0x1,y) = Tr(rho_{x0x1} M_{b|y}).
/// Preparations are indexed 2*x0 + x1.
SequentialTable pm_table(const std::array<QubitDensity, 4>& preps,
                         const std::array<BinaryPovm, 2>& meas);

/// sigma_{x1|x0} = Tr_A(M_{x1|x0} x 1 rho_AB).
Assemblage steer_assemblage(const TwoQubitDensity& rho,
                            const std::array<BinaryPovm, 2>& alice);

/// p(b|x1;x0,y) = Tr(sigma_{x1|x0} M_{b|y}) / Tr(sigma_{x1|x0}).
/// Throws ZeroConditioningProbability if some Tr sigma_{x1|x0} <= 1e-12.
ConditionalTable conditional_table(const Assemblage& asm_,
                                   const std::array<BinaryPovm, 2>& bob);

/// p(a,b|x,y) = Tr((M_{a|x} x M_{b|y}) rho).
Box box_from_state(const TwoQubitDensity& rho,
                   const std::array<BinaryPovm, 2>& alice,
                   const std::array<BinaryPovm, 2>& bob);

/// Split a box into p(b|a;x,y) and p(a|x). Throws
/// ZeroConditioningProbability if some marginal p(a|x) <= 1e-12.
ConditionalTable box_to_conditional(const Box& box);

/// Reassemble p(a,b|x,y) = p(a|x) p(b|a;x,y); inverse of box_to_conditional.
Box conditional_to_box(const ConditionalTable& ct);

// ---------------------------------------------------------------------------
// Reinterpretations under the fixed index map
// ---------------------------------------------------------------------------

/// View a sequential table as spatial conditionals under the fixed map
/// (x0 = setting, x1 = outcome), with uniform outcome probabilities.
ConditionalTable conditional_view(const SequentialTable& t);

/// Map from Alice's (setting, outcome) to the preparation label 2*x0 + x1.
using PmLabelMap = std::array<std::array<int, 2>, 2>;

inline constexpr PmLabelMap kIdentityLabelMap{{{0, 1}, {2, 3}}};

/// View spatial conditionals as a sequential table; `map` assigns each
/// (setting, outcome) pair to a preparation label.
SequentialTable sequential_view(const ConditionalTable& ct,
                                const PmLabelMap& map = kIdentityLabelMap);

}  // namespace qcorr
