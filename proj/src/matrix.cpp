// SPDX-License-Identifier: Apache-2.0
#include "qcorr/matrix.hpp"

#include <algorithm>

namespace qcorr {

namespace detail {

void jacobi_symmetric(double* a, int n) {
  double scale = 0.0;
  for (int i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
  if (scale == 0.0) return;
  const double stop = 1e-30 * scale * scale;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
}

}  // namespace detail

template <int N>
std::array<double, N> hermitian_eigenvalues(const SquareMatrix<N>& h) {
  constexpr int M = 2 * N;
  double a[M * M];
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      const double re = h(r, c).real();
      const double im = h(r, c).imag();
      a[r * M + c] = re;
      a[(r + N) * M + (c + N)] = re;
      a[r * M + (c + N)] = -im;
      a[(r + N) * M + c] = im;
    }
  }
  detail::jacobi_symmetric(a, M);
  std::array<double, M> all{};
  for (int i = 0; i < M; ++i) all[i] = a[i * M + i];
  std::sort(all.begin(), all.end());
  // Every eigenvalue of h appears exactly twice in the embedding.
  std::array<double, N> out{};
  for (int i = 0; i < N; ++i) out[i] = all[2 * i];
  return out;
}

template std::array<double, 2> hermitian_eigenvalues<2>(const SquareMatrix<2>&);
template std::array<double, 4> hermitian_eigenvalues<4>(const SquareMatrix<4>&);

}  // namespace qcorr
