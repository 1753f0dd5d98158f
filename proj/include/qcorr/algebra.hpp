// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

inline const Mat2& pauli_x() {
  static const Mat2 m = [] {
    Mat2 s;
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
  }();
  return m;
}

inline const Mat2& pauli_y() {
  static const Mat2 m = [] {
    Mat2 s;
    s(0, 1) = complex_t(0.0, -1.0);
    s(1, 0) = complex_t(0.0, 1.0);
    return s;
  }();
  return m;
}

inline const Mat2& pauli_z() {
  static const Mat2 m = [] {
    Mat2 s;
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    return s;
  }();
  return m;
}

/// Pauli basis in the fixed order (sigma_x, sigma_y, sigma_z) = c_1, c_2, c_3.
inline const Mat2& pauli(int i) {
  switch (i) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    default: return pauli_z();
  }
}

/// A point of (or direction in) the Bloch ball.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  BlochVector operator-() const { return {-x, -y, -z}; }
  friend BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend BlochVector operator*(double s, const BlochVector& v) {
    return {s * v.x, s * v.y, s * v.z};
  }

  BlochVector normalized() const;
};

/// s . sigma
Mat2 bloch_dot_sigma(const BlochVector& s);

/**
 * Validated qubit density operator: Hermitian, unit trace, positive
 * semidefinite (eigenvalues >= -1e-9, so states on the boundary of the
 * physical set survive rounding).
 */
class QubitDensity {
 public:
  explicit QubitDensity(const Mat2& op);

  const Mat2& op() const { return op_; }

 private:
  Mat2 op_;
};

/// Validated two-qubit density operator, first tensor factor is Alice.
class TwoQubitDensity {
 public:
  explicit TwoQubitDensity(const Mat4& op);

  const Mat4& op() const { return op_; }

 private:
  Mat4 op_;
};

/**
 * Two-effect qubit measurement M_b = gamma_b 1 + (-1)^b (eta/2) u.sigma.
 *
 * gamma0 + gamma1 = 1 and 0 <= gamma_b +- eta/2 <= 1 so that both effects are
 * positive and sum to the identity. eta = 1, gamma_b = 1/2 is the sharp
 * projective case.
 */
class BinaryPovm {
 public:
  /// The trivial measurement (both effects 1/2).
  BinaryPovm() : gamma0_(0.5), gamma1_(0.5), eta_(0.0), direction_{0, 0, 1} {}

  BinaryPovm(double gamma0, double gamma1, double eta, const BlochVector& direction);

  /// Projective measurement along `direction`.
  static BinaryPovm sharp(const BlochVector& direction) {
    return BinaryPovm(0.5, 0.5, 1.0, direction);
  }

  /// Unbiased unsharp measurement, effects (1 +- eta u.sigma) / 2.
  static BinaryPovm unsharp(double eta, const BlochVector& direction) {
    return BinaryPovm(0.5, 0.5, eta, direction);
  }

  double gamma(int b) const { return b == 0 ? gamma0_ : gamma1_; }
  double eta() const { return eta_; }
  const BlochVector& direction() const { return direction_; }

  /// Effect operator M_b.
  Mat2 effect(int b) const;

  /// Probability of outcome b on the state with Bloch vector s (unit trace).
  double outcome_probability(int b, const BlochVector& s) const {
    return gamma(b) + (b == 0 ? 1.0 : -1.0) * 0.5 * eta_ * direction_.dot(s);
  }

 private:
  double gamma0_;
  double gamma1_;
  double eta_;
  BlochVector direction_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// rho = (1 + s.sigma) / 2. Throws BlochOutOfBall if |s| > 1 + 1e-9.
QubitDensity bloch_to_density(const BlochVector& s);

/// Inverse of bloch_to_density.
BlochVector density_to_bloch(const QubitDensity& rho);

/**
 * Canonical two-qubit form
 *   zeta = (1x1 + a.sigma x 1 + 1 x b.sigma + sum_i c_i sigma_i x sigma_i)/4.
 * Throws NotPositive if the resulting operator has an eigenvalue < -1e-9.
 */
TwoQubitDensity canonical_two_qubit(const BlochVector& a, const BlochVector& b,
                                    const std::array<double, 3>& c);

/// Kronecker product, first factor Alice, row-major index 2*i_A + i_B.
Mat4 tensor(const Mat2& a, const Mat2& b);

/// Trace out the first (Alice) factor.
QubitDensity partial_trace_first(const TwoQubitDensity& rho);
Mat2 partial_trace_first(const Mat4& op);

/// Trace out the second (Bob) factor.
QubitDensity partial_trace_second(const TwoQubitDensity& rho);
Mat2 partial_trace_second(const Mat4& op);

/// The two effects (M_0, M_1); throws InvalidPovm if positivity fails
/// beyond 1e-9.
std::pair<Mat2, Mat2> povm_effects(const BinaryPovm& m);

}  // namespace qcorr
