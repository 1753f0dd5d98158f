// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qcorr/algebra.hpp"

namespace qcorr {

/// SplitMix64 step, used to derive independent per-restart seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

/**
 * Deterministic random source. Draws are produced from the raw mt19937_64
 * stream (whose output sequence the standard fixes), so identical seeds give
 * identical values on every platform.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t integer(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  double normal() {
    // Box-Muller; one value per call keeps the stream layout simple.
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  BlochVector unit_vector() {
    for (;;) {
      const BlochVector v{normal(), normal(), normal()};
      const double n = v.norm();
      if (n > 1e-12) return (1.0 / n) * v;
    }
  }

  BlochVector ball_point() {
    for (;;) {
      const BlochVector v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
      if (v.norm() <= 1.0) return v;
    }
  }

  /// A flat draw from the probability simplex on n atoms.
  std::vector<double> simplex_weights(int n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (double& v : w) {
      double u = uniform01();
      while (u <= 0.0) u = uniform01();
      v = -std::log(u);
      total += v;
    }
    for (double& v : w) v /= total;
    return w;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qcorr
