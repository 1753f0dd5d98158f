// SPDX-License-Identifier: Apache-2.0
#include "qcorr/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "qcorr/rng.hpp"
#include "qcorr/simplex.hpp"

namespace qcorr {

namespace {

using Resp = std::vector<std::array<std::array<double, 2>, 2>>;

int box_index(int x, int y, int a, int b) { return ((x * 2 + y) * 2 + a) * 2 + b; }

void check_dlambda(int dlambda) {
  if (dlambda < 1 || dlambda > 4)
    throw ConfigError("dlambda = " + std::to_string(dlambda) + " outside {1, 2, 3, 4}");
}

Box reconstruct_product(const std::vector<double>& w, const Resp& alice, const Resp& bob) {
  Box box;
  const int d = static_cast<int>(w.size());
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double v = 0.0;
          for (int l = 0; l < d; ++l) v += w[l] * alice[l][x][a] * bob[l][y][b];
          box.p[x][y][a][b] = v;
        }
  return box;
}

/// Bob's quantum responses p(b|y; r_l) for fixed measurements.
Resp lhs_responses(const std::array<BinaryPovm, 2>& meas,
                   const std::vector<BlochVector>& states) {
  Resp out(states.size());
  for (std::size_t l = 0; l < states.size(); ++l)
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b)
        out[l][y][b] = meas[y].outcome_probability(b, states[l]);
  return out;
}

struct SideSolution {
  std::vector<double> weights;
  Resp resp;
  double objective = 0.0;
};

/**
 * One see-saw half step: with the other party's normalized responses fixed,
 * the model is linear in (weights x own responses), reparametrized as
 * subnormalized rows r(l, s, o) with per-l row-sum consistency. Minimizes the
 * L1 distance (via its positive part; both sides are normalized per context).
 */
SideSolution solve_side_lp(const Box& box, int d, const Resp& other, bool alice_side) {
  const int nr = 4 * d;
  lp::Problem prob;
  prob.num_vars = nr + 16;
  prob.objective.assign(prob.num_vars, 0.0);
  for (int k = 0; k < 16; ++k) prob.objective[nr + k] = 2.0;

  const auto rvar = [d](int l, int setting, int outcome) {
    return l * 4 + setting * 2 + outcome;
  };

  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          lp::Constraint c;
          c.coeffs.assign(prob.num_vars, 0.0);
          const int own_setting = alice_side ? x : y;
          const int own_outcome = alice_side ? a : b;
          const int oth_setting = alice_side ? y : x;
          const int oth_outcome = alice_side ? b : a;
          for (int l = 0; l < d; ++l)
            c.coeffs[rvar(l, own_setting, own_outcome)] =
                other[l][oth_setting][oth_outcome];
          c.coeffs[nr + box_index(x, y, a, b)] = 1.0;
          c.rel = lp::Relation::GreaterEq;
          c.rhs = box.p[x][y][a][b];
          prob.constraints.push_back(std::move(c));
        }

  for (int l = 0; l < d; ++l) {
    lp::Constraint c;
    c.coeffs.assign(prob.num_vars, 0.0);
    c.coeffs[rvar(l, 0, 0)] = c.coeffs[rvar(l, 0, 1)] = 1.0;
    c.coeffs[rvar(l, 1, 0)] = c.coeffs[rvar(l, 1, 1)] = -1.0;
    c.rel = lp::Relation::Equal;
    c.rhs = 0.0;
    prob.constraints.push_back(std::move(c));
  }
  {
    lp::Constraint c;
    c.coeffs.assign(prob.num_vars, 0.0);
    for (int l = 0; l < d; ++l)
      c.coeffs[rvar(l, 0, 0)] = c.coeffs[rvar(l, 0, 1)] = 1.0;
    c.rel = lp::Relation::Equal;
    c.rhs = 1.0;
    prob.constraints.push_back(std::move(c));
  }

  const lp::Solution s = lp::minimize(prob);
  if (s.status != lp::Status::Optimal)
    throw Error("see-saw LP did not solve to optimality");

  SideSolution out;
  out.objective = std::max(s.objective, 0.0);
  out.weights.assign(d, 0.0);
  out.resp.assign(d, {});
  for (int l = 0; l < d; ++l) {
    const double w = s.x[rvar(l, 0, 0)] + s.x[rvar(l, 0, 1)];
    out.weights[l] = w;
    for (int setting = 0; setting < 2; ++setting)
      for (int outcome = 0; outcome < 2; ++outcome)
        out.resp[l][setting][outcome] =
            (w > 1e-14) ? s.x[rvar(l, setting, outcome)] / w : 0.5;
  }
  return out;
}

/**
 * Exact coordinate descent over the hidden Bloch vectors; every model entry
 * is affine in each coordinate, so each 1-D problem is a weighted-median
 * minimization over an interval. Returns the final L1 residual.
 */
double optimize_hidden_states(const Box& box, const std::array<BinaryPovm, 2>& meas,
                              const std::vector<double>& w, const Resp& alice,
                              std::vector<BlochVector>& states) {
  const int d = static_cast<int>(states.size());
  std::vector<std::array<std::array<double, 2>, 2>> c(d);  // w_l * A_l(a|x)
  for (int l = 0; l < d; ++l)
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) c[l][x][a] = w[l] * alice[l][x][a];

  const auto residual = [&]() {
    return box_l1_distance(box, LhsModel{d, w, alice, states}.reconstruct(meas));
  };

  double current = residual();
  for (int pass = 0; pass < 50; ++pass) {
    const double before = current;
    for (int l = 0; l < d; ++l) {
      for (int dim = 0; dim < 3; ++dim) {
        double coord[3] = {states[l].x, states[l].y, states[l].z};
        const double other_sq = coord[0] * coord[0] + coord[1] * coord[1] +
                                coord[2] * coord[2] - coord[dim] * coord[dim];
        const double span = std::sqrt(std::max(0.0, 1.0 - other_sq));

        // m_k = off_k + g_k t with t the coordinate under optimization.
        double alpha[16];
        double g[16];
        const Box model = LhsModel{d, w, alice, states}.reconstruct(meas);
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) {
                const int k = box_index(x, y, a, b);
                const double u = (dim == 0   ? meas[y].direction().x
                                  : dim == 1 ? meas[y].direction().y
                                             : meas[y].direction().z);
                g[k] = c[l][x][a] * (b == 0 ? 1.0 : -1.0) * 0.5 * meas[y].eta() * u;
                const double off = model.p[x][y][a][b] - g[k] * coord[dim];
                alpha[k] = box.p[x][y][a][b] - off;
              }

        const auto h = [&](double t) {
          double v = 0.0;
          for (int k = 0; k < 16; ++k) v += std::abs(alpha[k] - g[k] * t);
          return v;
        };

        // Start from the current value; ties keep the coordinate closest to
        // it so flat directions are never dragged to the ball boundary.
        double best_t = std::clamp(coord[dim], -span, span);
        double best_v = h(best_t);
        const auto consider = [&](double t) {
          t = std::clamp(t, -span, span);
          const double v = h(t);
          const bool closer = std::abs(t - coord[dim]) < std::abs(best_t - coord[dim]);
          if (v < best_v - 1e-15 || (std::abs(v - best_v) <= 1e-15 && closer)) {
            best_v = v;
            best_t = t;
          }
        };
        consider(-span);
        consider(span);
        for (int k = 0; k < 16; ++k)
          if (std::abs(g[k]) > 1e-14) consider(alpha[k] / g[k]);

        coord[dim] = best_t;
        states[l] = {coord[0], coord[1], coord[2]};
      }
    }
    current = residual();
    if (before - current < 1e-13) break;
  }
  return current;
}

struct RestartOutcome {
  double residual = std::numeric_limits<double>::infinity();
  long sweeps = 0;
  std::optional<LocalModel> local;
  std::optional<LhsModel> lhs;
};

RestartOutcome run_lhv_restart(const Box& box, int d, const SearchConfig& cfg,
                               std::uint64_t seed,
                               const std::optional<LocalModel>& warm) {
  RestartOutcome out;
  Rng rng(seed);

  std::vector<double> w;
  Resp alice(d), bob(d);
  if (warm.has_value()) {
    w = warm->weights;
    alice = warm->alice_resp;
    bob = warm->bob_resp;
  } else {
    w = rng.simplex_weights(d);
    for (int l = 0; l < d; ++l)
      for (int s = 0; s < 2; ++s) {
        const double pa = rng.uniform01();
        alice[l][s][0] = pa;
        alice[l][s][1] = 1.0 - pa;
        const double pb = rng.uniform01();
        bob[l][s][0] = pb;
        bob[l][s][1] = 1.0 - pb;
      }
  }

  double best = box_l1_distance(box, reconstruct_product(w, alice, bob));
  int stall = 0;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    SideSolution sa = solve_side_lp(box, d, bob, /*alice_side=*/true);
    w = sa.weights;
    alice = sa.resp;
    SideSolution sb = solve_side_lp(box, d, alice, /*alice_side=*/false);
    w = sb.weights;
    bob = sb.resp;
    ++out.sweeps;

    const double res = box_l1_distance(box, reconstruct_product(w, alice, bob));
    if (best - res < cfg.stall_improvement) ++stall;
    else stall = 0;
    best = std::min(best, res);
    if (best < 1e-13 || stall >= cfg.stall_sweeps) break;
  }

  out.residual = box_l1_distance(box, reconstruct_product(w, alice, bob));
  out.local = LocalModel{d, w, alice, bob};
  return out;
}

/// Hidden states for the deterministic first restart: the barycenter for
/// d = 1, otherwise the diagonals of Bob's measurement plane (the natural
/// support of two-setting hidden-state models).
std::vector<BlochVector> structured_hidden_states(
    const std::array<BinaryPovm, 2>& meas, int d) {
  if (d == 1) return {BlochVector{}};
  const BlochVector t0 = meas[0].direction();
  const BlochVector t1 = meas[1].direction();
  BlochVector c0 = t0 + t1;
  BlochVector c1 = t0 - t1;
  if (c0.norm() < 1e-9) c0 = t0;
  if (c1.norm() < 1e-9) c1 = t0;
  c0 = c0.normalized();
  c1 = c1.normalized();
  const BlochVector menu[4] = {c0, -c0, c1, -c1};
  return std::vector<BlochVector>(menu, menu + d);
}

RestartOutcome run_lhs_restart(const Box& box, const std::array<BinaryPovm, 2>& meas,
                               int d, const SearchConfig& cfg, std::uint64_t seed,
                               bool structured) {
  RestartOutcome out;
  Rng rng(seed);

  std::vector<double> w = rng.simplex_weights(d);
  Resp alice(d);
  std::vector<BlochVector> states(d);
  for (int l = 0; l < d; ++l) {
    for (int s = 0; s < 2; ++s) {
      const double pa = rng.uniform01();
      alice[l][s][0] = pa;
      alice[l][s][1] = 1.0 - pa;
    }
    states[l] = rng.ball_point();
  }
  if (structured) states = structured_hidden_states(meas, d);

  double best = box_l1_distance(box, LhsModel{d, w, alice, states}.reconstruct(meas));
  int stall = 0;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    SideSolution sa = solve_side_lp(box, d, lhs_responses(meas, states), true);
    w = sa.weights;
    alice = sa.resp;
    const double res = optimize_hidden_states(box, meas, w, alice, states);
    ++out.sweeps;

    if (best - res < cfg.stall_improvement) ++stall;
    else stall = 0;
    best = std::min(best, res);
    if (best < 1e-13 || stall >= cfg.stall_sweeps) break;
  }

  out.residual = box_l1_distance(box, LhsModel{d, w, alice, states}.reconstruct(meas));
  out.lhs = LhsModel{d, w, alice, states};
  return out;
}

/// Runs restarts in deterministic waves (parallel within a wave), merging by
/// (residual, restart index); stops after the first wave holding a model.
ModelSearchReport multistart(const SearchConfig& cfg,
                             const std::function<RestartOutcome(int, std::uint64_t)>& run) {
  if (cfg.restarts < 1) throw ConfigError("restarts must be >= 1");
  ModelSearchReport report;
  report.seed = cfg.seed;

  RestartOutcome best;
  int completed = 0;
  const int wave = std::max(1, cfg.threads);

  for (int start = 0; start < cfg.restarts && best.residual > cfg.feasibility_tol;
       start += wave) {
    const int count = std::min(wave, cfg.restarts - start);
    std::vector<RestartOutcome> outcomes(count);
    if (count == 1 || cfg.threads <= 1) {
      for (int i = 0; i < count; ++i)
        outcomes[i] = run(start + i, derive_seed(cfg.seed, start + i));
    } else {
      std::vector<std::thread> pool;
      pool.reserve(count);
      for (int i = 0; i < count; ++i)
        pool.emplace_back([&, i] {
          outcomes[i] = run(start + i, derive_seed(cfg.seed, start + i));
        });
      for (auto& t : pool) t.join();
    }
    // Merge by (residual, restart index): strict improvement keeps the
    // earliest restart on ties.
    for (int i = 0; i < count; ++i) {
      report.iterations += outcomes[i].sweeps;
      if (outcomes[i].residual < best.residual) best = std::move(outcomes[i]);
    }
    completed += count;
  }

  report.restarts = completed;
  report.residual = best.residual;
  report.local_model = std::move(best.local);
  report.lhs_model = std::move(best.lhs);
  if (report.residual <= cfg.feasibility_tol) {
    report.verdict = SearchVerdict::ModelFound;
    report.heuristic = false;
  } else if (completed >= cfg.min_restarts_for_no_model &&
             report.residual > cfg.no_model_tol) {
    report.verdict = SearchVerdict::NoModelFound;
    report.heuristic = true;
  } else {
    report.verdict = SearchVerdict::Inconclusive;
    report.heuristic = true;
  }
  return report;
}

/// d = 4 warm start: group the membership LP weights by Alice's deterministic
/// response function; Bob's conditional mixture is a valid stochastic
/// response, so every LP-feasible box yields a d = 4 product model.
std::optional<LocalModel> grouped_warm_start(const Box& box) {
  const ModelSearchReport lm = local_membership(box);
  if (lm.verdict != SearchVerdict::ModelFound || !lm.local_model.has_value())
    return std::nullopt;

  LocalModel model;
  model.dlambda = 4;
  model.weights.assign(4, 0.0);
  model.alice_resp.assign(4, {});
  model.bob_resp.assign(4, {});
  // The membership model's atoms are deterministic pairs; recover the pair
  // indices from the response tables.
  for (int l = 0; l < lm.local_model->dlambda; ++l) {
    int fa = 0;
    for (int x = 0; x < 2; ++x)
      if (lm.local_model->alice_resp[l][x][1] > 0.5) fa |= 1 << x;
    model.weights[fa] += lm.local_model->weights[l];
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b)
        model.bob_resp[fa][y][b] +=
            lm.local_model->weights[l] * lm.local_model->bob_resp[l][y][b];
  }
  for (int fa = 0; fa < 4; ++fa) {
    for (int x = 0; x < 2; ++x) {
      const int a = (fa >> x) & 1;
      model.alice_resp[fa][x][a] = 1.0;
      model.alice_resp[fa][x][1 - a] = 0.0;
    }
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b)
        model.bob_resp[fa][y][b] = (model.weights[fa] > 1e-14)
                                       ? model.bob_resp[fa][y][b] / model.weights[fa]
                                       : 0.5;
  }
  return model;
}

}  // namespace

const char* to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::ModelFound: return "ModelFound";
    case SearchVerdict::NoModelFound: return "NoModelFound";
    case SearchVerdict::Inconclusive: return "Inconclusive";
    case SearchVerdict::Infeasible: return "Infeasible";
  }
  return "?";
}

const char* to_string(SuperlocalityVerdict v) {
  switch (v) {
    case SuperlocalityVerdict::NotApplicableNonlocal: return "NotApplicableNonlocal";
    case SuperlocalityVerdict::Superlocal: return "Superlocal";
    case SuperlocalityVerdict::NotSuperlocal: return "NotSuperlocal";
  }
  return "?";
}

const char* to_string(SteeringVerdict v) {
  switch (v) {
    case SteeringVerdict::Steerable: return "Steerable";
    case SteeringVerdict::Superunsteerable: return "Superunsteerable";
    case SteeringVerdict::NotSuperunsteerable: return "NotSuperunsteerable";
  }
  return "?";
}

double box_l1_distance(const Box& a, const Box& b) {
  double d = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d += std::abs(a.p[x][y][i][j] - b.p[x][y][i][j]);
  return d;
}

Box LocalModel::reconstruct() const {
  return reconstruct_product(weights, alice_resp, bob_resp);
}

Box LhsModel::reconstruct(const std::array<BinaryPovm, 2>& bob_meas) const {
  return reconstruct_product(weights, alice_resp, lhs_responses(bob_meas, hidden_states));
}

ModelSearchReport local_membership(const Box& box) {
  box.validate();

  // 16 deterministic joint strategies; fa, fb encode each party's outputs.
  lp::Problem prob;
  prob.num_vars = 16 + 16;
  prob.objective.assign(prob.num_vars, 0.0);
  for (int k = 0; k < 16; ++k) prob.objective[16 + k] = 2.0;

  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          lp::Constraint c;
          c.coeffs.assign(prob.num_vars, 0.0);
          for (int fa = 0; fa < 4; ++fa)
            for (int fb = 0; fb < 4; ++fb)
              if (((fa >> x) & 1) == a && ((fb >> y) & 1) == b)
                c.coeffs[fa * 4 + fb] = 1.0;
          c.coeffs[16 + box_index(x, y, a, b)] = 1.0;
          c.rel = lp::Relation::GreaterEq;
          c.rhs = box.p[x][y][a][b];
          prob.constraints.push_back(std::move(c));
        }
  {
    lp::Constraint c;
    c.coeffs.assign(prob.num_vars, 0.0);
    for (int l = 0; l < 16; ++l) c.coeffs[l] = 1.0;
    c.rel = lp::Relation::Equal;
    c.rhs = 1.0;
    prob.constraints.push_back(std::move(c));
  }

  const lp::Solution s = lp::minimize(prob);
  if (s.status != lp::Status::Optimal)
    throw Error("local membership LP did not solve to optimality");

  ModelSearchReport report;
  report.residual = std::max(s.objective, 0.0);
  report.restarts = 1;
  report.iterations = s.iterations;
  report.heuristic = false;

  if (report.residual > 1e-8) {
    report.verdict = SearchVerdict::Infeasible;
    return report;
  }

  report.verdict = SearchVerdict::ModelFound;
  LocalModel model;
  double total = 0.0;
  for (int l = 0; l < 16; ++l) {
    if (s.x[l] <= 1e-12) continue;
    const int fa = l / 4;
    const int fb = l % 4;
    std::array<std::array<double, 2>, 2> ra{}, rb{};
    for (int x = 0; x < 2; ++x) ra[x][(fa >> x) & 1] = 1.0;
    for (int y = 0; y < 2; ++y) rb[y][(fb >> y) & 1] = 1.0;
    model.weights.push_back(s.x[l]);
    model.alice_resp.push_back(ra);
    model.bob_resp.push_back(rb);
    total += s.x[l];
  }
  for (double& w : model.weights) w /= total;
  model.dlambda = static_cast<int>(model.weights.size());
  report.local_model = std::move(model);
  return report;
}

ModelSearchReport bounded_lhv_search(const Box& box, int dlambda,
                                     const SearchConfig& cfg) {
  check_dlambda(dlambda);
  box.validate();
  std::optional<LocalModel> warm;
  if (dlambda == 4) warm = grouped_warm_start(box);
  ModelSearchReport report = multistart(cfg, [&](int restart, std::uint64_t seed) {
    const bool use_warm = warm.has_value() && restart == 0;
    return run_lhv_restart(box, dlambda, cfg, seed,
                           use_warm ? warm : std::optional<LocalModel>{});
  });
  return report;
}

ModelSearchReport bounded_lhs_search(const Box& box,
                                     const std::array<BinaryPovm, 2>& bob_meas,
                                     int dlambda, const SearchConfig& cfg) {
  check_dlambda(dlambda);
  box.validate();
  return multistart(cfg, [&](int restart, std::uint64_t seed) {
    return run_lhs_restart(box, bob_meas, dlambda, cfg, seed, restart == 0);
  });
}

SuperlocalityReport superlocality_verdict(const Box& box, const SearchConfig& cfg,
                                          int d_alice) {
  SuperlocalityReport out;
  out.membership = local_membership(box);
  if (out.membership.verdict == SearchVerdict::Infeasible) {
    out.verdict = SuperlocalityVerdict::NotApplicableNonlocal;
    out.heuristic = false;
    return out;
  }
  const int d = std::min(d_alice, 2);  // Bob is a qubit: min(d_A, d_B)
  out.bounded = bounded_lhv_search(box, d, cfg);
  if (out.bounded->verdict == SearchVerdict::NoModelFound) {
    out.verdict = SuperlocalityVerdict::Superlocal;
    out.heuristic = true;
  } else {
    out.verdict = SuperlocalityVerdict::NotSuperlocal;
    out.heuristic = out.bounded->verdict != SearchVerdict::ModelFound;
  }
  return out;
}

SuperunsteerabilityReport superunsteerability_verdict(
    const Box& box, const std::array<BinaryPovm, 2>& bob_meas,
    const SearchConfig& cfg, int d_alice) {
  SuperunsteerabilityReport out;
  out.at_dim4 = bounded_lhs_search(box, bob_meas, 4, cfg);
  if (out.at_dim4.verdict != SearchVerdict::ModelFound) {
    out.verdict = SteeringVerdict::Steerable;
    out.heuristic = true;  // absence of a found model is only evidence
    return out;
  }
  out.at_dim_alice = bounded_lhs_search(box, bob_meas, d_alice, cfg);
  if (out.at_dim_alice->verdict == SearchVerdict::NoModelFound) {
    out.verdict = SteeringVerdict::Superunsteerable;
    out.heuristic = true;
  } else {
    out.verdict = SteeringVerdict::NotSuperunsteerable;
    out.heuristic = out.at_dim_alice->verdict != SearchVerdict::ModelFound;
  }
  return out;
}

}  // namespace qcorr
