// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcorr/scenario.hpp"

namespace qcorr {

/// Knobs of the bounded-cardinality model searches.
struct SearchConfig {
  int restarts = 64;
  std::uint64_t seed = 1;
  int max_sweeps = 500;
  int stall_sweeps = 5;             // stop after this many non-improving sweeps
  double stall_improvement = 1e-12;
  double feasibility_tol = 1e-8;    // residual at or below => ModelFound
  double no_model_tol = 1e-6;       // NoModelFound needs residual above this
  int min_restarts_for_no_model = 64;
  int threads = 1;
};

enum class SearchVerdict {
  ModelFound,
  NoModelFound,   // heuristic: >= 64 restarts all stuck above no_model_tol
  Inconclusive,   // residual in the gap, or too few restarts to declare
  Infeasible,     // exact LP verdict (local_membership only)
};

const char* to_string(SearchVerdict v);

/// Shared-randomness model p(a,b|x,y) = sum_l w_l A_l(a|x) B_l(b|y).
struct LocalModel {
  int dlambda = 0;
  std::vector<double> weights;
  std::vector<std::array<std::array<double, 2>, 2>> alice_resp;  // [l][x][a]
  std::vector<std::array<std::array<double, 2>, 2>> bob_resp;    // [l][y][b]

  Box reconstruct() const;
};

/// LHV-LHS model: Alice classical, Bob's responses come from hidden qubit
/// states measured with the fixed POVMs.
struct LhsModel {
  int dlambda = 0;
  std::vector<double> weights;
  std::vector<std::array<std::array<double, 2>, 2>> alice_resp;  // [l][x][a]
  std::vector<BlochVector> hidden_states;

  Box reconstruct(const std::array<BinaryPovm, 2>& bob_meas) const;
};

struct ModelSearchReport {
  SearchVerdict verdict = SearchVerdict::Inconclusive;
  double residual = 0.0;  // L1 distance between target and best model
  std::optional<LocalModel> local_model;
  std::optional<LhsModel> lhs_model;
  int restarts = 0;
  long iterations = 0;
  std::uint64_t seed = 0;
  bool heuristic = false;  // set whenever the verdict rests on the search
};

/// L1 distance between two boxes.
double box_l1_distance(const Box& a, const Box& b);

/**
 * Exact local-polytope membership: minimizes the L1 distance from the box to
 * the convex hull of the 16 deterministic strategies by linear programming.
 * Infeasible iff the minimum distance exceeds 1e-8.
 */
ModelSearchReport local_membership(const Box& box);

/**
 * Multistart see-saw search for an LHV-LHV model with at most `dlambda`
 * hidden values: alternately solves the Alice-side LP (weights folded into
 * subnormalized responses) and the symmetric Bob-side LP. A NoModelFound
 * verdict is heuristic, never a proof.
 */
ModelSearchReport bounded_lhv_search(const Box& box, int dlambda,
                                     const SearchConfig& cfg);

/**
 * Multistart search for an LHV-LHS model: the Alice step is the same LP; the
 * Bob step optimizes the hidden-state Bloch vectors by exact coordinate
 * descent (each conditional probability is affine in them, |r| <= 1).
 * Bob's measurements are the given ones generating the box; they are not
 * optimized.
 */
ModelSearchReport bounded_lhs_search(const Box& box,
                                     const std::array<BinaryPovm, 2>& bob_meas,
                                     int dlambda, const SearchConfig& cfg);

enum class SuperlocalityVerdict { NotApplicableNonlocal, Superlocal, NotSuperlocal };

const char* to_string(SuperlocalityVerdict v);

struct SuperlocalityReport {
  SuperlocalityVerdict verdict = SuperlocalityVerdict::NotSuperlocal;
  bool heuristic = false;
  ModelSearchReport membership;
  std::optional<ModelSearchReport> bounded;
};

/// Nonlocal boxes are out of scope for superlocality; a local box is
/// Superlocal (heuristically) when no d_lambda <= min(d_alice, 2) model
/// is found.
SuperlocalityReport superlocality_verdict(const Box& box, const SearchConfig& cfg,
                                          int d_alice = 2);

enum class SteeringVerdict { Steerable, Superunsteerable, NotSuperunsteerable };

const char* to_string(SteeringVerdict v);

struct SuperunsteerabilityReport {
  SteeringVerdict verdict = SteeringVerdict::NotSuperunsteerable;
  bool heuristic = true;
  ModelSearchReport at_dim4;
  std::optional<ModelSearchReport> at_dim_alice;
};

/// No d_lambda <= 4 LHS model found => flagged Steerable; otherwise
/// Superunsteerable iff no d_lambda <= d_alice model is found.
SuperunsteerabilityReport superunsteerability_verdict(
    const Box& box, const std::array<BinaryPovm, 2>& bob_meas,
    const SearchConfig& cfg, int d_alice = 2);

}  // namespace qcorr
