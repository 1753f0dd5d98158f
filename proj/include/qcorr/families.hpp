// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcorr/scenario.hpp"

namespace qcorr {

/**
 * A named preparation/measurement strategy: either four explicit qubit
 * preparations (prepare-and-measure realization) or a shared two-qubit state
 * with Alice's measurements (bipartite realization). Bob's measurements are
 * always present.
 */
struct NamedStrategy {
  std::string label;
  std::optional<std::array<QubitDensity, 4>> preps;  // indexed 2*x0 + x1
  std::optional<TwoQubitDensity> state;
  std::optional<std::array<BinaryPovm, 2>> alice;
  std::array<BinaryPovm, 2> bob;
  // Assignment of Alice's (setting, outcome) pairs to preparation labels when
  // the bipartite realization is read as a P&M table.
  PmLabelMap pm_label = kIdentityLabelMap;

  void validate() const;
};

/// BB84 preparations {(1 +- sigma_z)/2, (1 +- sigma_x)/2} with sharp
/// measurements {sigma_z, sigma_x}; reaches W = 1.
NamedStrategy bb84_strategy();

/// The four (x +- y)/sqrt(2) preparations with sharp {sigma_x, sigma_y};
/// reaches W_L = 2 sqrt(2) and P_B = (1 + 1/sqrt(2))/2.
NamedStrategy rac_optimal_strategy();

/// rho_V = V |psi-><psi-| + (1-V)/4 * 1. Throws DomainError outside [0, 1].
TwoQubitDensity werner_state(double v);

/// P(x1 b|x0 y) = (1 + (-1)^(x1+b+x0 y) delta_{x0,y} V)/4.
/// Throws DomainError outside [0, 1].
Box white_noise_bb84_box(double v);

/// Alice's -sigma_z, sigma_x and Bob's sigma_z, sigma_x: the sharp
/// measurements generating white_noise_bb84_box from werner_state.
MeasurementPair white_noise_bb84_measurements();

/// Popescu-Rohrlich box, p(a,b|x,y) = 1/2 if a xor b = x and y, else 0.
Box pr_box();

/// Classical-quantum state p0 |r><r| x chi0 + (1-p0) |-r><-r| x chi1.
TwoQubitDensity cq_state(double p0, const BlochVector& r, const QubitDensity& chi0,
                         const QubitDensity& chi1);

/// Quantum-classical mirror image of cq_state.
TwoQubitDensity qc_state(double p0, const QubitDensity& phi0, const QubitDensity& phi1,
                         const BlochVector& r);

/// Bell-diagonal state c = (1/2, 1/2, 0) with Alice sharp along
/// (x +- y)/sqrt(2) and Bob sharp {sigma_x, sigma_y}; the preparation labels
/// follow the 2-to-1 RAC assignment, so P_min = 1/2 + 1/(4 sqrt(2)).
NamedStrategy bell_diagonal_rac_strategy();

// ---------------------------------------------------------------------------
// Derived objects
// ---------------------------------------------------------------------------

/// Conditional table of the strategy (bipartite route when a state is
/// present, otherwise the P&M table viewed under the fixed index map).
ConditionalTable conditional_of(const NamedStrategy& s);

/// Sequential P&M table of the strategy (bipartite realizations are read
/// through the strategy's preparation-label assignment).
SequentialTable sequential_of(const NamedStrategy& s);

/// Joint box, available for bipartite realizations only.
std::optional<Box> box_of(const NamedStrategy& s);

// ---------------------------------------------------------------------------
// CLI-facing family registry
// ---------------------------------------------------------------------------

/// A family identifier resolved into concrete objects.
struct FamilyInstance {
  std::string name;
  std::optional<NamedStrategy> strategy;
  std::optional<Box> box;
  std::optional<std::array<BinaryPovm, 2>> bob_meas;
};

/// Resolve identifiers of the form `bb84`, `rac-optimal`, `werner:V`,
/// `wn-bb84:V`, `pr`, `bell-diag-rac`. Throws ParseError on anything else.
FamilyInstance make_family(const std::string& spec);

struct FamilyDescription {
  std::string name;
  std::string parameter;  // empty when the family takes none
  std::string summary;
};

const std::vector<FamilyDescription>& family_catalog();

}  // namespace qcorr
