// SPDX-License-Identifier: Apache-2.0
#include "qcorr/scenario.hpp"

#include <cmath>
#include <string>

namespace qcorr {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kConditionalSumTol = 1e-9;
constexpr double kNonsignalingTol = 1e-10;
constexpr double kEntryTol = 1e-12;
constexpr double kZeroMarginal = 1e-12;

}  // namespace

void SequentialTable::validate() const {
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y) {
        double sum = 0.0;
        for (int b = 0; b < 2; ++b) {
          const double v = p[x0][x1][y][b];
          if (v < -kEntryTol || v > 1.0 + kEntryTol)
            throw InvariantViolation("sequential table entry outside [0,1]");
          sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTol)
          throw InvariantViolation("sequential table row does not sum to 1");
      }
}

void Assemblage::validate() const {
  for (int x0 = 0; x0 < 2; ++x0) {
    double tsum = 0.0;
    for (int x1 = 0; x1 < 2; ++x1) {
      const Mat2& s = at(x1, x0);
      if (!s.is_hermitian(1e-12))
        throw InvariantViolation("assemblage member is not Hermitian");
      const auto eig = hermitian_eigenvalues(s);
      if (eig[0] < -1e-9)
        throw NotPositive("assemblage member has eigenvalue " + std::to_string(eig[0]));
      tsum += s.trace().real();
    }
    if (std::abs(tsum - 1.0) > kRowSumTol)
      throw InvariantViolation("assemblage traces do not sum to 1");
  }
  const Mat2 lhs = at(0, 0) + at(1, 0);
  const Mat2 rhs = at(0, 1) + at(1, 1);
  if (lhs.max_abs_diff(rhs) > kNonsignalingTol)
    throw InvariantViolation("assemblage violates nonsignaling");
}

void ConditionalTable::validate() const {
  for (int x0 = 0; x0 < 2; ++x0) {
    double asum = 0.0;
    for (int x1 = 0; x1 < 2; ++x1) {
      const double w = pa[x0][x1];
      if (w < -kEntryTol || w > 1.0 + kEntryTol)
        throw InvariantViolation("outcome probability outside [0,1]");
      asum += w;
      if (w <= kZeroMarginal) continue;
      for (int y = 0; y < 2; ++y) {
        const double sum = pb[x0][x1][y][0] + pb[x0][x1][y][1];
        if (std::abs(sum - 1.0) > kConditionalSumTol)
          throw InvariantViolation("conditional row does not sum to 1");
      }
    }
    if (std::abs(asum - 1.0) > kRowSumTol)
      throw InvariantViolation("outcome probabilities do not sum to 1");
  }
}

double Box::marginal_a(int x, int a) const {
  return 0.5 * (p[x][0][a][0] + p[x][0][a][1] + p[x][1][a][0] + p[x][1][a][1]);
}

double Box::marginal_b(int y, int b) const {
  return 0.5 * (p[0][y][0][b] + p[0][y][1][b] + p[1][y][0][b] + p[1][y][1][b]);
}

double Box::correlator(int x, int y) const {
  double e = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e += (((a + b) % 2 == 0) ? 1.0 : -1.0) * p[x][y][a][b];
  return e;
}

void Box::validate() const {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double sum = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double v = p[x][y][a][b];
          if (v < -kEntryTol || v > 1.0 + kEntryTol)
            throw InvariantViolation("box entry outside [0,1]");
          sum += v;
        }
      if (std::abs(sum - 1.0) > kRowSumTol)
        throw InvariantViolation("box context does not sum to 1");
    }
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double m0 = p[x][0][a][0] + p[x][0][a][1];
      const double m1 = p[x][1][a][0] + p[x][1][a][1];
      if (std::abs(m0 - m1) > kNonsignalingTol)
        throw InvariantViolation("box signals from Bob to Alice");
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      const double m0 = p[0][y][0][b] + p[0][y][1][b];
      const double m1 = p[1][y][0][b] + p[1][y][1][b];
      if (std::abs(m0 - m1) > kNonsignalingTol)
        throw InvariantViolation("box signals from Alice to Bob");
    }
}

SequentialTable pm_table(const std::array<QubitDensity, 4>& preps,
                         const std::array<BinaryPovm, 2>& meas) {
  SequentialTable t;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      const Mat2& rho = preps[2 * x0 + x1].op();
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b)
          t.p[x0][x1][y][b] = real_trace_product(rho, meas[y].effect(b));
    }
  t.validate();
  return t;
}

Assemblage steer_assemblage(const TwoQubitDensity& rho,
                            const std::array<BinaryPovm, 2>& alice) {
  Assemblage out;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      const Mat4 m = tensor(alice[x0].effect(x1), Mat2::identity()) * rho.op();
      out.at(x1, x0) = partial_trace_first(m);
    }
  out.validate();
  return out;
}

ConditionalTable conditional_table(const Assemblage& asm_,
                                   const std::array<BinaryPovm, 2>& bob) {
  ConditionalTable ct;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      const Mat2& s = asm_.at(x1, x0);
      const double w = s.trace().real();
      if (w <= kZeroMarginal)
        throw ZeroConditioningProbability(
            "Tr sigma_{" + std::to_string(x1) + "|" + std::to_string(x0) +
            "} vanishes; the conditional is undefined");
      ct.pa[x0][x1] = w;
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b)
          ct.pb[x0][x1][y][b] = real_trace_product(s, bob[y].effect(b)) / w;
    }
  ct.validate();
  return ct;
}

Box box_from_state(const TwoQubitDensity& rho,
                   const std::array<BinaryPovm, 2>& alice,
                   const std::array<BinaryPovm, 2>& bob) {
  Box box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          box.p[x][y][a][b] =
              real_trace_product(tensor(alice[x].effect(a), bob[y].effect(b)), rho.op());
  box.validate();
  return box;
}

ConditionalTable box_to_conditional(const Box& box) {
  ConditionalTable ct;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double w = box.marginal_a(x, a);
      if (w <= kZeroMarginal)
        throw ZeroConditioningProbability("box marginal p(a=" + std::to_string(a) +
                                          "|x=" + std::to_string(x) + ") vanishes");
      ct.pa[x][a] = w;
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) ct.pb[x][a][y][b] = box.p[x][y][a][b] / w;
    }
  ct.validate();
  return ct;
}

Box conditional_to_box(const ConditionalTable& ct) {
  Box box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          box.p[x][y][a][b] = ct.pa[x][a] * ct.pb[x][a][y][b];
  box.validate();
  return box;
}

ConditionalTable conditional_view(const SequentialTable& t) {
  ConditionalTable ct;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1) {
      ct.pa[x0][x1] = 0.5;
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) ct.pb[x0][x1][y][b] = t.p[x0][x1][y][b];
    }
  return ct;
}

SequentialTable sequential_view(const ConditionalTable& ct, const PmLabelMap& map) {
  SequentialTable t;
  for (int setting = 0; setting < 2; ++setting)
    for (int outcome = 0; outcome < 2; ++outcome) {
      const int label = map[setting][outcome];
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b)
          t.p[label >> 1][label & 1][y][b] = ct.pb[setting][outcome][y][b];
    }
  t.validate();
  return t;
}

}  // namespace qcorr
