// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "qcorr/scenario.hpp"

namespace qcorr {

enum class WitnessKind { W, Q, WL, PB, PMIN, CHSH, HMIN };

struct WitnessValue {
  double value = 0.0;
  WitnessKind kind = WitnessKind::W;
};

/// Nonlinear dimension witness W = |det D| with
/// D[y][x0] = p(0|x0 0, y) - p(0|x0 1, y).
WitnessValue witness_w(const SequentialTable& t);

/// Signed determinant behind witness_w (debug accessor).
double witness_w_signed(const SequentialTable& t);

/// Spatial counterpart Q = |det D| with D[y][x0] = p(0|0;x0,y) - p(0|1;x0,y).
WitnessValue quantity_q(const ConditionalTable& ct);

/// Signed determinant behind quantity_q (debug accessor).
double quantity_q_signed(const ConditionalTable& ct);

/// Guessing-probability bound f(Q) = (1 + sqrt((2-Q)/2)) / 2, decreasing in Q.
/// Throws DomainError for Q outside [0, 2].
double guessing_bound(double q);

/// Certified min-entropy lower bound -log2 f(Q).
double min_entropy(double q);

/// Linear dimension witness W_L (classical bound W_L <= 2).
WitnessValue linear_witness_wl(const SequentialTable& t);

/// 2-to-1 random-access-code average success P_B = (1/8) sum p(b=x_y|x0x1,y).
/// Equals (W_L + 4)/8 identically.
WitnessValue rac_average_success(const SequentialTable& t);

/// Worst-case RAC success P_min = min_{x0,x1,y} p(b=x_y|x0x1,y).
WitnessValue rac_worst_case(const SequentialTable& t);

/// Classical P_min bounds for n-to-1 random-access codes assisted by two
/// shared bits: 2/3 for n = 2, 1/2 for n > 2, and 1/2 for any n when the
/// assisting bits have maximally mixed marginals on Bob's side.
/// Throws UnsupportedN for n outside {2, 3}.
double sl_threshold(int n, bool maximally_mixed_marginals);

/// Max over the 8 sign conventions of |sum +-E(x,y)| with one minus sign.
WitnessValue chsh_value(const Box& box);

// ---------------------------------------------------------------------------
// Closed-form Q expressions for canonical states, and the measurement
// constructions that realize each of them exactly.
// ---------------------------------------------------------------------------

/// Q for Alice and Bob both measuring sharply along x and y:
///   |(c1 - a1 b1)(c2 - a2 b2) - a1 b1 a2 b2| / ((1 - a1^2)(1 - a2^2)).
/// Throws DegenerateMarginal if 1 - a_i^2 <= 1e-12.
double closed_form_q_aligned(const BlochVector& a, const BlochVector& b,
                             const std::array<double, 3>& c);

/// Q for the steering-optimized construction (Alice's effect vectors
/// (c1 x +- c2 y)/sqrt(2), Bob sharp along (x +- y)/sqrt(2)):
///   |4 c1 c2 (a2 b2 c1 + a1 b1 c2 - c1 c2)| /
///   (a1^4 c1^4 + (a2^2 c2^2 - 2)^2 - 2 a1^2 c1^2 (2 + a2^2 c2^2)).
/// Throws DegenerateDenominator if the denominator magnitude <= 1e-12.
double closed_form_q_steering_optimal(const BlochVector& a, const BlochVector& b,
                                      const std::array<double, 3>& c);

/// Q for the RAC-optimized construction (Alice sharp along (x +- y)/sqrt(2),
/// Bob's effect vectors x/sqrt(2) and y/sqrt(2)):
///   2 |(c1 - a1 b1)(c2 - a2 b2) - a1 b1 a2 b2| /
///   (a1^4 + (a2^2 - 2)^2 - 2 a1^2 (2 + a2^2)).
/// Throws DegenerateDenominator if the denominator magnitude <= 1e-12.
double closed_form_q_rac_optimal(const BlochVector& a, const BlochVector& b,
                                 const std::array<double, 3>& c);

/// Alice and Bob sharp along x and y; realizes closed_form_q_aligned.
MeasurementPair aligned_measurements();

/// Realizes closed_form_q_steering_optimal for the given correlation
/// diagonal c (requires c1^2 + c2^2 > 0).
MeasurementPair steering_optimal_measurements(const std::array<double, 3>& c);

/// Realizes closed_form_q_rac_optimal.
MeasurementPair rac_optimal_measurements();

/// Conditional table of the canonical state (a, b, c) under `meas`.
ConditionalTable canonical_conditional_table(const BlochVector& a,
                                             const BlochVector& b,
                                             const std::array<double, 3>& c,
                                             const MeasurementPair& meas);

}  // namespace qcorr
