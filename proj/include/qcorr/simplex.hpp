// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace qcorr::lp {

enum class Relation { LessEq, GreaterEq, Equal };

struct Constraint {
  std::vector<double> coeffs;  // one per structural variable
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

/// min objective . x  subject to the constraints and x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

/**
 * Dense two-phase primal simplex. Dantzig pricing with a Bland fallback for
 * termination; deterministic tie breaking throughout. Sized for the tiny
 * programs this library produces (at most a few hundred variables).
 */
Solution minimize(const Problem& problem);

}  // namespace qcorr::lp
