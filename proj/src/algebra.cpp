// SPDX-License-Identifier: Apache-2.0
#include "qcorr/algebra.hpp"

#include <string>

namespace qcorr {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-9;

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

BlochVector BlochVector::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw DomainError("cannot normalize a zero Bloch vector");
  return {x / n, y / n, z / n};
}

Mat2 bloch_dot_sigma(const BlochVector& s) {
  Mat2 m;
  m(0, 0) = s.z;
  m(1, 1) = -s.z;
  m(0, 1) = complex_t(s.x, -s.y);
  m(1, 0) = complex_t(s.x, s.y);
  return m;
}

QubitDensity::QubitDensity(const Mat2& op) : op_(op) {
  if (!op_.is_hermitian(kHermitianTol))
    throw NotPositive("qubit density operator is not Hermitian");
  if (std::abs(op_.trace() - complex_t(1.0)) > kTraceTol)
    throw NotPositive("qubit density operator does not have unit trace");
  const auto eig = hermitian_eigenvalues(op_);
  if (eig[0] < -kPsdTol)
    throw NotPositive("qubit density operator has eigenvalue " + fmt(eig[0]));
}

TwoQubitDensity::TwoQubitDensity(const Mat4& op) : op_(op) {
  if (!op_.is_hermitian(kHermitianTol))
    throw NotPositive("two-qubit density operator is not Hermitian");
  if (std::abs(op_.trace() - complex_t(1.0)) > kTraceTol)
    throw NotPositive("two-qubit density operator does not have unit trace");
  const auto eig = hermitian_eigenvalues(op_);
  if (eig[0] < -kPsdTol)
    throw NotPositive("two-qubit density operator has eigenvalue " + fmt(eig[0]));
}

BinaryPovm::BinaryPovm(double gamma0, double gamma1, double eta,
                       const BlochVector& direction)
    : gamma0_(gamma0), gamma1_(gamma1), eta_(eta), direction_(direction) {
  if (std::abs(gamma0_ + gamma1_ - 1.0) > kTraceTol)
    throw InvalidPovm("gamma0 + gamma1 must equal 1");
  // Effect eigenvalues are gamma_b +- eta/2; both must lie in [0, 1].
  for (int b = 0; b < 2; ++b) {
    const double g = gamma(b);
    const double lo = g - std::abs(eta_) / 2.0;
    const double hi = g + std::abs(eta_) / 2.0;
    if (lo < -kPsdTol || hi > 1.0 + kPsdTol)
      throw InvalidPovm("effect eigenvalues [" + fmt(lo) + ", " + fmt(hi) +
                        "] outside [0, 1]");
  }
  const double n = direction_.norm();
  if (std::abs(eta_) > kTraceTol) {
    if (std::abs(n - 1.0) > 1e-9)
      throw InvalidPovm("measurement direction must be a unit vector");
    direction_ = direction_.normalized();
  }
}

Mat2 BinaryPovm::effect(int b) const {
  const double sign = (b == 0) ? 1.0 : -1.0;
  return gamma(b) * Mat2::identity() + complex_t(sign * eta_ / 2.0) * bloch_dot_sigma(direction_);
}

QubitDensity bloch_to_density(const BlochVector& s) {
  if (s.norm() > 1.0 + 1e-9)
    throw BlochOutOfBall("Bloch vector has norm " + fmt(s.norm()));
  const Mat2 op = complex_t(0.5) * (Mat2::identity() + bloch_dot_sigma(s));
  return QubitDensity(op);
}

BlochVector density_to_bloch(const QubitDensity& rho) {
  const Mat2& m = rho.op();
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

TwoQubitDensity canonical_two_qubit(const BlochVector& a, const BlochVector& b,
                                    const std::array<double, 3>& c) {
  Mat4 op = tensor(Mat2::identity(), Mat2::identity());
  op = op + tensor(bloch_dot_sigma(a), Mat2::identity());
  op = op + tensor(Mat2::identity(), bloch_dot_sigma(b));
  for (int i = 0; i < 3; ++i) op = op + complex_t(c[i]) * tensor(pauli(i), pauli(i));
  op = complex_t(0.25) * op;
  return TwoQubitDensity(op);
}

Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int ia = 0; ia < 2; ++ia)
    for (int ja = 0; ja < 2; ++ja)
      for (int ib = 0; ib < 2; ++ib)
        for (int jb = 0; jb < 2; ++jb)
          m(2 * ia + ib, 2 * ja + jb) = a(ia, ja) * b(ib, jb);
  return m;
}

Mat2 partial_trace_first(const Mat4& op) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = op(i, j) + op(2 + i, 2 + j);
  return m;
}

Mat2 partial_trace_second(const Mat4& op) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = op(2 * i, 2 * j) + op(2 * i + 1, 2 * j + 1);
  return m;
}

QubitDensity partial_trace_first(const TwoQubitDensity& rho) {
  return QubitDensity(partial_trace_first(rho.op()));
}

QubitDensity partial_trace_second(const TwoQubitDensity& rho) {
  return QubitDensity(partial_trace_second(rho.op()));
}

std::pair<Mat2, Mat2> povm_effects(const BinaryPovm& m) {
  for (int b = 0; b < 2; ++b) {
    const double lo = m.gamma(b) - std::abs(m.eta()) / 2.0;
    const double hi = m.gamma(b) + std::abs(m.eta()) / 2.0;
    if (lo < -kPsdTol || hi > 1.0 + kPsdTol)
      throw InvalidPovm("POVM effect positivity violated");
  }
  return {m.effect(0), m.effect(1)};
}

}  // namespace qcorr
