// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "qcorr/families.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/scenario.hpp"

namespace qcorr::testing {

/// Locate the CLI binary: the QCORR_CLI env var (set by ctest) or the usual
/// build locations relative to the repo root and the test directory.
inline std::string cli_binary_path() {
  if (const char* env = std::getenv("QCORR_CLI")) return env;
  for (const char* candidate :
       {"build/tools/qcorr", "../tools/qcorr", "tools/qcorr"})
    if (std::ifstream(candidate).good()) return candidate;
  return "qcorr";
}

/// Random density operator from a Ginibre draw G G^dag / Tr.
inline QubitDensity random_qubit(Rng& rng) {
  Mat2 g;
  for (int i = 0; i < 4; ++i) g.e[i] = complex_t(rng.normal(), rng.normal());
  Mat2 rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho = complex_t(1.0 / tr) * rho;
  return QubitDensity(rho);
}

inline TwoQubitDensity random_two_qubit(Rng& rng) {
  Mat4 g;
  for (int i = 0; i < 16; ++i) g.e[i] = complex_t(rng.normal(), rng.normal());
  Mat4 rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho = complex_t(1.0 / tr) * rho;
  return TwoQubitDensity(rho);
}

/// Random POVM kept away from the degenerate corners so that conditioning
/// probabilities stay bounded below.
inline BinaryPovm random_povm(Rng& rng) {
  const double gamma0 = rng.uniform(0.3, 0.7);
  const double margin = 2.0 * std::min({gamma0, 1.0 - gamma0});
  const double eta = rng.uniform(0.05, 0.95 * margin);
  return BinaryPovm(gamma0, 1.0 - gamma0, eta, rng.unit_vector());
}

inline std::array<BinaryPovm, 2> random_povm_pair(Rng& rng) {
  return {random_povm(rng), random_povm(rng)};
}

inline std::array<BinaryPovm, 2> random_sharp_pair(Rng& rng) {
  return {BinaryPovm::sharp(rng.unit_vector()), BinaryPovm::sharp(rng.unit_vector())};
}

/// One of the eight PR-type extremal boxes: a xor b = xy xor ax xor by xor g.
inline Box pr_variant(int alpha, int beta, int gamma) {
  Box box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          box.p[x][y][a][b] =
              ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma)) ? 0.5 : 0.0;
  return box;
}

inline Box deterministic_box(int fa, int fb) {
  Box box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      box.p[x][y][(fa >> x) & 1][(fb >> y) & 1] = 1.0;
  return box;
}

/// Random point of the nonsignaling polytope: a convex mixture over its 24
/// vertices (16 deterministic and 8 PR-type). `local_only` restricts to the
/// local polytope.
inline Box random_ns_box(Rng& rng, bool local_only) {
  std::vector<Box> support;
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb) support.push_back(deterministic_box(fa, fb));
  if (!local_only) {
    for (int v = 0; v < 8; ++v) support.push_back(pr_variant(v & 1, (v >> 1) & 1, (v >> 2) & 1));
    // Push extra mass onto one nonlocal vertex so both feasibility classes
    // show up in the sample.
    const int pick = 16 + static_cast<int>(rng.integer(8));
    const double mass = rng.uniform01();
    const auto w = rng.simplex_weights(static_cast<int>(support.size()));
    Box box;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            double acc = mass * support[pick].p[x][y][a][b];
            for (std::size_t i = 0; i < support.size(); ++i)
              acc += (1.0 - mass) * w[i] * support[i].p[x][y][a][b];
            box.p[x][y][a][b] = acc;
          }
    box.validate();
    return box;
  }
  const auto w = rng.simplex_weights(static_cast<int>(support.size()));
  Box box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double acc = 0.0;
          for (std::size_t i = 0; i < support.size(); ++i)
            acc += w[i] * support[i].p[x][y][a][b];
          box.p[x][y][a][b] = acc;
        }
  box.validate();
  return box;
}

/// Random canonical-state parameters kept away from the closed-form
/// denominators' singular sets.
struct CanonicalParams {
  BlochVector a;
  BlochVector b;
  std::array<double, 3> c;
};

inline CanonicalParams random_canonical(Rng& rng) {
  for (;;) {
    CanonicalParams p;
    p.a = rng.uniform(0.0, 0.85) * rng.unit_vector();
    p.b = rng.uniform(0.0, 0.85) * rng.unit_vector();
    for (int i = 0; i < 3; ++i) p.c[i] = rng.uniform(-1.0, 1.0);
    try {
      canonical_two_qubit(p.a, p.b, p.c);
    } catch (const NotPositive&) {
      continue;
    }
    if (1.0 - p.a.x * p.a.x <= 1e-3 || 1.0 - p.a.y * p.a.y <= 1e-3) continue;
    if (p.c[0] * p.c[0] + p.c[1] * p.c[1] <= 1e-3) continue;
    return p;
  }
}

/// Random sequential table (rows normalized by construction).
inline SequentialTable random_sequential_table(Rng& rng) {
  SequentialTable t;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y) {
        const double p0 = rng.uniform01();
        t.p[x0][x1][y][0] = p0;
        t.p[x0][x1][y][1] = 1.0 - p0;
      }
  return t;
}

}  // namespace qcorr::testing
