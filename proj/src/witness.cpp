// SPDX-License-Identifier: Apache-2.0
#include "qcorr/witness.hpp"

#include <cmath>
#include <string>

namespace qcorr {

namespace {

double det2(const double d[2][2]) {
  return d[0][0] * d[1][1] - d[0][1] * d[1][0];
}

}  // namespace

double witness_w_signed(const SequentialTable& t) {
  double d[2][2];
  for (int y = 0; y < 2; ++y)
    for (int x0 = 0; x0 < 2; ++x0)
      d[y][x0] = t.p[x0][0][y][0] - t.p[x0][1][y][0];
  return det2(d);
}

WitnessValue witness_w(const SequentialTable& t) {
  return {std::abs(witness_w_signed(t)), WitnessKind::W};
}

double quantity_q_signed(const ConditionalTable& ct) {
  double d[2][2];
  for (int y = 0; y < 2; ++y)
    for (int x0 = 0; x0 < 2; ++x0)
      d[y][x0] = ct.pb[x0][0][y][0] - ct.pb[x0][1][y][0];
  return det2(d);
}

WitnessValue quantity_q(const ConditionalTable& ct) {
  return {std::abs(quantity_q_signed(ct)), WitnessKind::Q};
}

double guessing_bound(double q) {
  if (q < -1e-12 || q > 2.0 + 1e-12)
    throw DomainError("Q = " + std::to_string(q) + " outside [0, 2]");
  q = std::min(std::max(q, 0.0), 2.0);
  return 0.5 * (1.0 + std::sqrt((2.0 - q) / 2.0));
}

double min_entropy(double q) {
  const double h = -std::log2(guessing_bound(q));
  return h == 0.0 ? 0.0 : h;  // avoid the negative-zero artifact at Q = 0
}

WitnessValue linear_witness_wl(const SequentialTable& t) {
  const double v = t.p[0][0][0][0] + t.p[0][0][1][0] + t.p[0][1][0][0] -
                   t.p[0][1][1][0] - t.p[1][0][0][0] + t.p[1][0][1][0] -
                   t.p[1][1][0][0] - t.p[1][1][1][0];
  return {v, WitnessKind::WL};
}

WitnessValue rac_average_success(const SequentialTable& t) {
  double sum = 0.0;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y) {
        const int target = (y == 0) ? x0 : x1;
        sum += t.p[x0][x1][y][target];
      }
  return {sum / 8.0, WitnessKind::PB};
}

WitnessValue rac_worst_case(const SequentialTable& t) {
  double worst = 1.0;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y) {
        const int target = (y == 0) ? x0 : x1;
        worst = std::min(worst, t.p[x0][x1][y][target]);
      }
  return {worst, WitnessKind::PMIN};
}

double sl_threshold(int n, bool maximally_mixed_marginals) {
  if (n != 2 && n != 3)
    throw UnsupportedN("n = " + std::to_string(n) + " not supported (need 2 or 3)");
  if (maximally_mixed_marginals) return 0.5;
  return (n == 2) ? 2.0 / 3.0 : 0.5;
}

WitnessValue chsh_value(const Box& box) {
  double e[2][2];
  double total = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      e[x][y] = box.correlator(x, y);
      total += e[x][y];
    }
  double best = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      best = std::max(best, std::abs(total - 2.0 * e[x][y]));
  return {best, WitnessKind::CHSH};
}

double closed_form_q_aligned(const BlochVector& a, const BlochVector& b,
                             const std::array<double, 3>& c) {
  const double m1 = 1.0 - a.x * a.x;
  const double m2 = 1.0 - a.y * a.y;
  if (m1 <= 1e-12 || m2 <= 1e-12)
    throw DegenerateMarginal("1 - a_i^2 vanishes; conditional states undefined");
  const double num = (c[0] - a.x * b.x) * (c[1] - a.y * b.y) - a.x * b.x * a.y * b.y;
  return std::abs(num) / (m1 * m2);
}

double closed_form_q_steering_optimal(const BlochVector& a, const BlochVector& b,
                                      const std::array<double, 3>& c) {
  const double x = a.x * c[0];
  const double y = a.y * c[1];
  const double den = x * x * x * x + (y * y - 2.0) * (y * y - 2.0) -
                     2.0 * x * x * (2.0 + y * y);
  if (std::abs(den) <= 1e-12)
    throw DegenerateDenominator("steering-optimal Q denominator vanishes");
  const double num = 4.0 * c[0] * c[1] * (a.y * b.y * c[0] + a.x * b.x * c[1] - c[0] * c[1]);
  return std::abs(num / den);
}

double closed_form_q_rac_optimal(const BlochVector& a, const BlochVector& b,
                                 const std::array<double, 3>& c) {
  const double x = a.x;
  const double y = a.y;
  const double den = x * x * x * x + (y * y - 2.0) * (y * y - 2.0) -
                     2.0 * x * x * (2.0 + y * y);
  if (std::abs(den) <= 1e-12)
    throw DegenerateDenominator("RAC-optimal Q denominator vanishes");
  const double num =
      2.0 * ((c[0] - a.x * b.x) * (c[1] - a.y * b.y) - a.x * b.x * a.y * b.y);
  return std::abs(num / den);
}

MeasurementPair aligned_measurements() {
  return {{BinaryPovm::sharp({1, 0, 0}), BinaryPovm::sharp({0, 1, 0})},
          {BinaryPovm::sharp({1, 0, 0}), BinaryPovm::sharp({0, 1, 0})}};
}

MeasurementPair steering_optimal_measurements(const std::array<double, 3>& c) {
  const double s = std::hypot(c[0], c[1]);
  if (s <= 1e-12)
    throw DegenerateDenominator("c1 = c2 = 0 leaves no measurement plane");
  // Effect vectors (c1 x +- c2 y)/sqrt(2): direction normalized, the length
  // becomes the sharpness eta.
  const double eta = s / std::sqrt(2.0);
  const BlochVector u0 = (1.0 / s) * BlochVector{c[0], c[1], 0.0};
  const BlochVector u1 = (1.0 / s) * BlochVector{c[0], -c[1], 0.0};
  const double r = 1.0 / std::sqrt(2.0);
  return {{BinaryPovm::unsharp(eta, u0), BinaryPovm::unsharp(eta, u1)},
          {BinaryPovm::sharp({r, r, 0}), BinaryPovm::sharp({r, -r, 0})}};
}

MeasurementPair rac_optimal_measurements() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{BinaryPovm::sharp({r, r, 0}), BinaryPovm::sharp({r, -r, 0})},
          {BinaryPovm::unsharp(r, {1, 0, 0}), BinaryPovm::unsharp(r, {0, 1, 0})}};
}

ConditionalTable canonical_conditional_table(const BlochVector& a,
                                             const BlochVector& b,
                                             const std::array<double, 3>& c,
                                             const MeasurementPair& meas) {
  const TwoQubitDensity state = canonical_two_qubit(a, b, c);
  return conditional_table(steer_assemblage(state, meas.alice), meas.bob);
}

}  // namespace qcorr
