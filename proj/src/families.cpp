// SPDX-License-Identifier: Apache-2.0
#include "qcorr/families.hpp"

#include <cmath>

namespace qcorr {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::array<BinaryPovm, 2> sharp_pair(const BlochVector& d0, const BlochVector& d1) {
  return {BinaryPovm::sharp(d0), BinaryPovm::sharp(d1)};
}

double parse_parameter(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("family " + name + ": cannot parse parameter '" + text + "'");
  }
}

}  // namespace

void NamedStrategy::validate() const {
  const bool has_preps = preps.has_value();
  const bool has_state = state.has_value() && alice.has_value();
  if (has_preps == has_state)
    throw InvariantViolation(
        "strategy must carry exactly one of {preparations, state + Alice measurements}");
}

NamedStrategy bb84_strategy() {
  NamedStrategy s;
  s.label = "bb84";
  s.preps = {bloch_to_density({0, 0, 1}), bloch_to_density({0, 0, -1}),
             bloch_to_density({1, 0, 0}), bloch_to_density({-1, 0, 0})};
  s.bob = sharp_pair({0, 0, 1}, {1, 0, 0});
  return s;
}

NamedStrategy rac_optimal_strategy() {
  NamedStrategy s;
  s.label = "rac-optimal";
  s.preps = {bloch_to_density({kInvSqrt2, kInvSqrt2, 0}),
             bloch_to_density({kInvSqrt2, -kInvSqrt2, 0}),
             bloch_to_density({-kInvSqrt2, kInvSqrt2, 0}),
             bloch_to_density({-kInvSqrt2, -kInvSqrt2, 0})};
  s.bob = sharp_pair({1, 0, 0}, {0, 1, 0});
  return s;
}

TwoQubitDensity werner_state(double v) {
  if (v < 0.0 || v > 1.0)
    throw DomainError("Werner visibility V = " + std::to_string(v) + " outside [0, 1]");
  return canonical_two_qubit({0, 0, 0}, {0, 0, 0}, {-v, -v, -v});
}

Box white_noise_bb84_box(double v) {
  if (v < 0.0 || v > 1.0)
    throw DomainError("visibility V = " + std::to_string(v) + " outside [0, 1]");
  Box box;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int y = 0; y < 2; ++y)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int b = 0; b < 2; ++b) {
          const double sign = ((x1 + b + x0 * y) % 2 == 0) ? 1.0 : -1.0;
          const double delta = (x0 == y) ? 1.0 : 0.0;
          box.p[x0][y][x1][b] = (1.0 + sign * delta * v) / 4.0;
        }
  box.validate();
  return box;
}

MeasurementPair white_noise_bb84_measurements() {
  return {sharp_pair({0, 0, -1}, {1, 0, 0}), sharp_pair({0, 0, 1}, {1, 0, 0})};
}

Box pr_box() {
  Box box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          box.p[x][y][a][b] = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
  box.validate();
  return box;
}

TwoQubitDensity cq_state(double p0, const BlochVector& r, const QubitDensity& chi0,
                         const QubitDensity& chi1) {
  if (p0 < 0.0 || p0 > 1.0) throw DomainError("p0 outside [0, 1]");
  const QubitDensity up = bloch_to_density(r.normalized());
  const QubitDensity down = bloch_to_density(-r.normalized());
  const Mat4 op = complex_t(p0) * tensor(up.op(), chi0.op()) +
                  complex_t(1.0 - p0) * tensor(down.op(), chi1.op());
  return TwoQubitDensity(op);
}

TwoQubitDensity qc_state(double p0, const QubitDensity& phi0, const QubitDensity& phi1,
                         const BlochVector& r) {
  if (p0 < 0.0 || p0 > 1.0) throw DomainError("p0 outside [0, 1]");
  const QubitDensity up = bloch_to_density(r.normalized());
  const QubitDensity down = bloch_to_density(-r.normalized());
  const Mat4 op = complex_t(p0) * tensor(phi0.op(), up.op()) +
                  complex_t(1.0 - p0) * tensor(phi1.op(), down.op());
  return TwoQubitDensity(op);
}

NamedStrategy bell_diagonal_rac_strategy() {
  NamedStrategy s;
  s.label = "bell-diag-rac";
  s.state = canonical_two_qubit({0, 0, 0}, {0, 0, 0}, {0.5, 0.5, 0.0});
  s.alice = sharp_pair({kInvSqrt2, kInvSqrt2, 0}, {kInvSqrt2, -kInvSqrt2, 0});
  s.bob = sharp_pair({1, 0, 0}, {0, 1, 0});
  // 2-to-1 RAC preparation labels: outcome 0 of setting s prepares rho_{0s},
  // outcome 1 the antipode rho_{1,1-s}.
  s.pm_label = {{{0, 3}, {1, 2}}};
  return s;
}

ConditionalTable conditional_of(const NamedStrategy& s) {
  s.validate();
  if (s.state.has_value())
    return conditional_table(steer_assemblage(*s.state, *s.alice), s.bob);
  return conditional_view(pm_table(*s.preps, s.bob));
}

SequentialTable sequential_of(const NamedStrategy& s) {
  s.validate();
  if (s.preps.has_value()) return pm_table(*s.preps, s.bob);
  return sequential_view(conditional_of(s), s.pm_label);
}

std::optional<Box> box_of(const NamedStrategy& s) {
  s.validate();
  if (!s.state.has_value()) return std::nullopt;
  return box_from_state(*s.state, *s.alice, s.bob);
}

FamilyInstance make_family(const std::string& spec) {
  std::string name = spec;
  std::string param;
  if (const auto pos = spec.find(':'); pos != std::string::npos) {
    name = spec.substr(0, pos);
    param = spec.substr(pos + 1);
  }

  FamilyInstance fam;
  fam.name = spec;
  if (name == "bb84" || name == "rac-optimal" || name == "bell-diag-rac" ||
      name == "pr") {
    if (!param.empty())
      throw ParseError("family " + name + " takes no parameter");
  }

  if (name == "bb84") {
    fam.strategy = bb84_strategy();
  } else if (name == "rac-optimal") {
    fam.strategy = rac_optimal_strategy();
  } else if (name == "bell-diag-rac") {
    fam.strategy = bell_diagonal_rac_strategy();
    fam.box = box_of(*fam.strategy);
    fam.bob_meas = fam.strategy->bob;
  } else if (name == "pr") {
    fam.box = pr_box();
  } else if (name == "werner") {
    if (param.empty())
      throw ParseError("family werner needs a visibility, e.g. werner:0.5");
    const double v = parse_parameter(name, param);
    const MeasurementPair m = white_noise_bb84_measurements();
    NamedStrategy s;
    s.label = fam.name;
    s.state = werner_state(v);
    s.alice = m.alice;
    s.bob = m.bob;
    fam.strategy = s;
    fam.box = box_of(s);
    fam.bob_meas = m.bob;
  } else if (name == "wn-bb84") {
    if (param.empty())
      throw ParseError("family wn-bb84 needs a visibility, e.g. wn-bb84:0.5");
    const double v = parse_parameter(name, param);
    fam.box = white_noise_bb84_box(v);
    fam.bob_meas = white_noise_bb84_measurements().bob;
  } else {
    throw ParseError("unknown family '" + name + "'");
  }
  return fam;
}

const std::vector<FamilyDescription>& family_catalog() {
  static const std::vector<FamilyDescription> catalog = {
      {"bb84", "", "BB84 preparations with sharp {sigma_z, sigma_x}; W = 1"},
      {"rac-optimal", "",
       "optimal 2-to-1 RAC strategy; W_L = 2*sqrt(2), P_B = (1+1/sqrt(2))/2"},
      {"werner", "V", "Werner state with the standard measurements; Q = V^2"},
      {"wn-bb84", "V", "white-noise BB84 box; Q = V^2, CHSH = 2V"},
      {"pr", "", "Popescu-Rohrlich box; CHSH = 4, Q = 2"},
      {"bell-diag-rac", "",
       "Bell-diagonal c = (1/2, 1/2, 0) RAC strategy; P_min = 1/2 + 1/(4*sqrt(2))"},
  };
  return catalog;
}

}  // namespace qcorr
