// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qcorr {

using complex_t = std::complex<double>;

/**
 * Dense fixed-size complex square matrix (dim 2 or 4), row major.
 *
 * These are the only operator sizes the library needs; everything is kept
 * on the stack and all operations are pure.
 */
template <int N>
struct SquareMatrix {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 operators are supported");
  static constexpr int dim = N;

  std::array<complex_t, N * N> e{};

  complex_t& operator()(int r, int c) { return e[r * N + c]; }
  const complex_t& operator()(int r, int c) const { return e[r * N + c]; }

  static SquareMatrix zero() { return SquareMatrix{}; }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  SquareMatrix adjoint() const {
    SquareMatrix m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  complex_t trace() const {
    complex_t t = 0.0;
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_hermitian(double tol) const {
    for (int r = 0; r < N; ++r)
      for (int c = r; c < N; ++c)
        if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
  }

  double max_abs_diff(const SquareMatrix& other) const {
    double m = 0.0;
    for (int i = 0; i < N * N; ++i) m = std::max(m, std::abs(e[i] - other.e[i]));
    return m;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (int i = 0; i < N * N; ++i) m.e[i] = a.e[i] + b.e[i];
    return m;
  }

  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (int i = 0; i < N * N; ++i) m.e[i] = a.e[i] - b.e[i];
    return m;
  }

  friend SquareMatrix operator*(complex_t s, const SquareMatrix& a) {
    SquareMatrix m;
    for (int i = 0; i < N * N; ++i) m.e[i] = s * a.e[i];
    return m;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        complex_t acc = 0.0;
        for (int k = 0; k < N; ++k) acc += a(r, k) * b(k, c);
        m(r, c) = acc;
      }
    return m;
  }
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

/// Re Tr(A B), enough for probabilities Tr(rho M) of Hermitian arguments.
template <int N>
inline double real_trace_product(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double t = 0.0;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) t += (a(r, c) * b(c, r)).real();
  return t;
}

namespace detail {

/// Cyclic Jacobi on a real symmetric n x n matrix stored row major in `a`
/// (destroyed). Eigenvalues land unsorted on the diagonal.
void jacobi_symmetric(double* a, int n);

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending. Uses the real embedding
/// [[Re, -Im], [Im, Re]] whose spectrum is that of the input, doubled.
template <int N>
std::array<double, N> hermitian_eigenvalues(const SquareMatrix<N>& h);

}  // namespace qcorr
