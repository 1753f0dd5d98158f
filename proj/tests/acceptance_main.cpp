// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expects the CLI path in QCORR_CLI for the reproducibility check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qcorr/certify.hpp"
#include "qcorr/families.hpp"
#include "qcorr/witness.hpp"

using namespace qcorr;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- criterion 1 -----------------------------------------------------------
// Q = V^2 for the white-noise BB84 family, directly and through the Werner
// construction, 101 points, 1e-10.
Check criterion1(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  const MeasurementPair meas = white_noise_bb84_measurements();
  for (int i = 0; i <= 100; ++i) {
    const double v = i / 100.0;
    const double q_direct =
        quantity_q(box_to_conditional(white_noise_bb84_box(v))).value;
    c.expect(std::abs(q_direct - v * v) < 1e-10,
             "direct Q(" + fmt(v) + ") = " + fmt(q_direct));
    const Box built = box_from_state(werner_state(v), meas.alice, meas.bob);
    const double q_built = quantity_q(box_to_conditional(built)).value;
    c.expect(std::abs(q_built - v * v) < 1e-10,
             "Werner-built Q(" + fmt(v) + ") = " + fmt(q_built));
  }
  c.expect(elapsed_s(t0) < budget_s, "runtime " + fmt(elapsed_s(t0)) + "s");
  return c;
}

// --- criterion 2 -----------------------------------------------------------
Check criterion2(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  const NamedStrategy s = bb84_strategy();
  const double w = witness_w(pm_table(*s.preps, s.bob)).value;
  c.expect(std::abs(w - 1.0) < 1e-12, "W(bb84) = " + fmt(w));

  const auto commuting = std::array<BinaryPovm, 2>{BinaryPovm::sharp({0, 0, 1}),
                                                   BinaryPovm::sharp({0, 0, 1})};
  const double w0 = witness_w(pm_table(*s.preps, commuting)).value;
  c.expect(std::abs(w0) < 1e-12, "W(commuting) = " + fmt(w0));
  c.expect(elapsed_s(t0) < budget_s, "runtime");
  return c;
}

// --- criterion 3 -----------------------------------------------------------
Check criterion3(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  const NamedStrategy s = rac_optimal_strategy();
  const SequentialTable t = pm_table(*s.preps, s.bob);
  c.expect(std::abs(linear_witness_wl(t).value - 2.0 * std::sqrt(2.0)) < 1e-12,
           "W_L quantum");
  c.expect(std::abs(rac_average_success(t).value -
                    0.5 * (1.0 + 1.0 / std::sqrt(2.0))) < 1e-12,
           "P_B quantum");

  // Every deterministic classical-bit strategy: 16 encodings x 16 decodings.
  double max_wl = -10.0;
  double max_pb = 0.0;
  for (int enc = 0; enc < 16; ++enc)
    for (int dec0 = 0; dec0 < 4; ++dec0)
      for (int dec1 = 0; dec1 < 4; ++dec1) {
        SequentialTable ct;
        for (int x0 = 0; x0 < 2; ++x0)
          for (int x1 = 0; x1 < 2; ++x1) {
            const int msg = (enc >> (2 * x0 + x1)) & 1;
            for (int y = 0; y < 2; ++y) {
              const int dec = (y == 0) ? dec0 : dec1;
              ct.p[x0][x1][y][(dec >> msg) & 1] = 1.0;
            }
          }
        max_wl = std::max(max_wl, linear_witness_wl(ct).value);
        max_pb = std::max(max_pb, rac_average_success(ct).value);
      }
  c.expect(max_wl == 2.0, "classical max W_L = " + fmt(max_wl));
  c.expect(max_pb == 0.75, "classical max P_B = " + fmt(max_pb));
  c.expect(elapsed_s(t0) < budget_s, "runtime");
  return c;
}

// --- criterion 4 -----------------------------------------------------------
Check criterion4(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  Rng rng(1001);
  for (int i = 0; i < 10000; ++i) {
    const SequentialTable t = testing::random_sequential_table(rng);
    const double pb = rac_average_success(t).value;
    const double wl = linear_witness_wl(t).value;
    c.expect(std::abs(pb - (wl + 4.0) / 8.0) < 1e-12, "identity violated");
  }
  c.expect(elapsed_s(t0) < budget_s, "runtime " + fmt(elapsed_s(t0)) + "s");
  return c;
}

// --- criterion 5 -----------------------------------------------------------
Check criterion5(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  Rng rng(1002);
  for (int i = 0; i < 10000; ++i) {
    const double p0 = rng.uniform(0.02, 0.98);
    const BlochVector axis = rng.unit_vector();
    const QubitDensity chi0 = testing::random_qubit(rng);
    const QubitDensity chi1 = testing::random_qubit(rng);
    const auto alice = testing::random_povm_pair(rng);
    const auto bob = testing::random_povm_pair(rng);

    const TwoQubitDensity cq = cq_state(p0, axis, chi0, chi1);
    const double q_cq =
        quantity_q(conditional_table(steer_assemblage(cq, alice), bob)).value;
    c.expect(q_cq < 1e-9, "CQ state gave Q = " + fmt(q_cq));

    const TwoQubitDensity qc = qc_state(p0, chi0, chi1, axis);
    const double q_qc =
        quantity_q(conditional_table(steer_assemblage(qc, alice), bob)).value;
    c.expect(q_qc < 1e-9, "QC state gave Q = " + fmt(q_qc));
  }
  c.expect(elapsed_s(t0) < budget_s, "runtime " + fmt(elapsed_s(t0)) + "s");
  return c;
}

// --- criterion 6 -----------------------------------------------------------
Check criterion6(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  Rng rng(1003);
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_canonical(rng);

    const double aligned = closed_form_q_aligned(p.a, p.b, p.c);
    const double aligned_tab =
        quantity_q(canonical_conditional_table(p.a, p.b, p.c, aligned_measurements()))
            .value;
    c.expect(std::abs(aligned - aligned_tab) < 1e-10, "aligned mismatch");

    const double steer = closed_form_q_steering_optimal(p.a, p.b, p.c);
    const double steer_tab =
        quantity_q(canonical_conditional_table(p.a, p.b, p.c,
                                               steering_optimal_measurements(p.c)))
            .value;
    c.expect(std::abs(steer - steer_tab) < 1e-10, "steering-optimal mismatch");

    const double rac = closed_form_q_rac_optimal(p.a, p.b, p.c);
    const double rac_tab =
        quantity_q(canonical_conditional_table(p.a, p.b, p.c, rac_optimal_measurements()))
            .value;
    c.expect(std::abs(rac - rac_tab) < 1e-10, "RAC-optimal mismatch");
  }
  const BlochVector half{0.5, 0.5, 0.0};
  const std::array<double, 3> chalf{0.5, 0.5, 0.0};
  c.expect(std::abs(closed_form_q_aligned(half, half, chalf)) < 1e-12,
           "aligned at the boundary separable state");
  c.expect(std::abs(closed_form_q_steering_optimal(half, half, chalf)) < 1e-12,
           "steering-optimal at the boundary separable state");
  c.expect(std::abs(closed_form_q_rac_optimal(half, half, chalf)) < 1e-12,
           "RAC-optimal at the boundary separable state");
  c.expect(elapsed_s(t0) < budget_s, "runtime " + fmt(elapsed_s(t0)) + "s");
  return c;
}

// --- criterion 7 -----------------------------------------------------------
Check criterion7() {
  Check c;
  c.expect(std::abs(guessing_bound(0.0) - 1.0) < 1e-12, "f(0)");
  c.expect(std::abs(min_entropy(0.0)) < 1e-12, "H(0)");
  c.expect(std::abs(guessing_bound(1.0) - 0.5 * (1.0 + 1.0 / std::sqrt(2.0))) < 1e-12,
           "f(1)");
  // Exact identity to 1e-12; the six-digit approximation to its own precision.
  c.expect(std::abs(min_entropy(1.0) -
                    (1.0 - std::log2(1.0 + 1.0 / std::sqrt(2.0)))) < 1e-12,
           "H(1) identity");
  c.expect(std::abs(min_entropy(1.0) - 0.228443) < 1e-5, "H(1)");
  c.expect(std::abs(guessing_bound(2.0) - 0.5) < 1e-12, "f(2)");
  c.expect(std::abs(min_entropy(2.0) - 1.0) < 1e-12, "H(2)");

  double prev_f = 2.0, prev_h = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double q = 2.0 * i / 1000.0;
    const double f = guessing_bound(q);
    const double h = min_entropy(q);
    c.expect(f <= prev_f + 1e-15 && h >= prev_h - 1e-15, "monotonicity");
    prev_f = f;
    prev_h = h;
  }
  return c;
}

// --- criterion 8 -----------------------------------------------------------
Check criterion8() {
  Check c;
  const Box pr = pr_box();
  c.expect(chsh_value(pr).value == 4.0, "CHSH(PR)");
  c.expect(quantity_q(box_to_conditional(pr)).value == 2.0, "Q(PR)");
  const ModelSearchReport r = local_membership(pr);
  c.expect(r.verdict == SearchVerdict::Infeasible, "membership verdict");
  c.expect(r.residual > 1e-8, "L1 distance " + fmt(r.residual));
  return c;
}

// --- criterion 9 -----------------------------------------------------------
Check criterion9(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  Rng rng(1004);
  int nonlocal = 0;
  for (int i = 0; i < 10000; ++i) {
    const Box box = testing::random_ns_box(rng, /*local_only=*/false);
    const double chsh = chsh_value(box).value;
    const double residual = local_membership(box).residual;
    if (chsh > 2.0 + 1e-8) {
      ++nonlocal;
      c.expect(residual > 1e-8, "LP accepted a CHSH-violating box");
    } else if (chsh <= 2.0 - 1e-8) {
      c.expect(residual <= 1e-8, "LP rejected a CHSH-satisfying box");
    }
  }
  c.expect(nonlocal > 500, "sampler produced too few nonlocal boxes");
  c.expect(elapsed_s(t0) < budget_s, "runtime " + fmt(elapsed_s(t0)) + "s");
  return c;
}

// --- criterion 10 ----------------------------------------------------------
Check criterion10(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  const MeasurementPair meas = white_noise_bb84_measurements();

  for (double v : {0.2, 0.4, 0.6}) {
    SearchConfig cfg;
    cfg.restarts = 64;
    cfg.seed = 71;
    const ModelSearchReport r =
        bounded_lhs_search(white_noise_bb84_box(v), meas.bob, 4, cfg);
    c.expect(r.verdict == SearchVerdict::ModelFound && r.residual < 1e-8,
             "no d=4 model at V = " + fmt(v));
  }
  for (double v : {0.3, 0.5, 0.7}) {
    SearchConfig cfg;
    cfg.restarts = 64;
    cfg.seed = 72;
    const ModelSearchReport r =
        bounded_lhs_search(white_noise_bb84_box(v), meas.bob, 2, cfg);
    c.expect(r.restarts >= 64, "d=2 search ran fewer than 64 restarts");
    c.expect(r.residual > 1e-6, "d=2 search reached " + fmt(r.residual));

    const SuperunsteerabilityReport rep =
        superunsteerability_verdict(white_noise_bb84_box(v), meas.bob, cfg);
    c.expect(rep.verdict == SteeringVerdict::Superunsteerable && rep.heuristic,
             "verdict at V = " + fmt(v));
  }
  c.expect(elapsed_s(t0) < budget_s, "runtime " + fmt(elapsed_s(t0)) + "s");
  return c;
}

// --- criterion 11 ----------------------------------------------------------
Check criterion11(double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  const SequentialTable t = sequential_of(bell_diagonal_rac_strategy());
  const double pmin = rac_worst_case(t).value;
  c.expect(std::abs(pmin - (0.5 + 1.0 / (4.0 * std::sqrt(2.0)))) < 1e-10,
           "P_min = " + fmt(pmin));
  c.expect(pmin > 2.0 / 3.0, "SL2 violation");
  c.expect(linear_witness_wl(t).value <= 2.0 + 1e-10, "W_L above 2");
  const double q = closed_form_q_rac_optimal({0, 0, 0}, {0, 0, 0}, {0.5, 0.5, 0});
  c.expect(std::abs(q - 0.125) < 1e-10, "Q = " + fmt(q));
  c.expect(elapsed_s(t0) < budget_s, "runtime");
  return c;
}

// --- criterion 12 ----------------------------------------------------------
std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Check criterion12() {
  Check c;
  const std::string cli = qcorr::testing::cli_binary_path();

  const std::string sweep_cmd =
      cli + " sweep --family wn-bb84 --range 0:1:21 --out acc12_sweep_";
  c.expect(std::system((sweep_cmd + "a.csv").c_str()) == 0, "sweep run 1");
  c.expect(std::system((sweep_cmd + "b.csv").c_str()) == 0, "sweep run 2");
  const std::string sa = slurp("acc12_sweep_a.csv");
  c.expect(!sa.empty() && sa == slurp("acc12_sweep_b.csv"),
           "sweep outputs differ");

  const std::string certify_cmd =
      cli + " certify unsteerable --family wn-bb84:0.5 --dlambda 2 --restarts 8"
            " --seed 7 --out acc12_certify_";
  c.expect(std::system((certify_cmd + "a.jsonl").c_str()) == 0, "certify run 1");
  c.expect(std::system((certify_cmd + "b.jsonl").c_str()) == 0, "certify run 2");
  const std::string ca = slurp("acc12_certify_a.jsonl");
  c.expect(!ca.empty() && ca == slurp("acc12_certify_b.jsonl"),
           "certify outputs differ");

  for (const char* f : {"acc12_sweep_a.csv", "acc12_sweep_b.csv",
                        "acc12_certify_a.jsonl", "acc12_certify_b.jsonl"})
    std::remove(f);
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string title;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Q = V^2 across the white-noise BB84 sweep", [] { return criterion1(1.0); }},
      {2, "W = 1 for BB84, W = 0 for commuting measurements", [] { return criterion2(1.0); }},
      {3, "W_L and P_B quantum optima vs exhaustive classical bounds", [] { return criterion3(1.0); }},
      {4, "P_B = (W_L + 4)/8 on 10^4 random tables", [] { return criterion4(5.0); }},
      {5, "Q = 0 for 10^4 random CQ and QC states", [] { return criterion5(30.0); }},
      {6, "closed-form Q = table Q on 10^3 random canonical states", [] { return criterion6(10.0); }},
      {7, "guessing-bound spot values and monotonicity", [] { return criterion7(); }},
      {8, "PR box extremals and LP infeasibility", [] { return criterion8(); }},
      {9, "local membership vs CHSH on 10^4 nonsignaling boxes", [] { return criterion9(60.0); }},
      {10, "bounded LHS search corroborates the V <= 1/sqrt(2) threshold", [] { return criterion10(300.0); }},
      {11, "Bell-diagonal RAC strategy values", [] { return criterion11(1.0); }},
      {12, "byte-identical sweep and certify reruns", [] { return criterion12(); }},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = Clock::now();
    const Check result = criterion.run();
    const double dt = elapsed_s(t0);
    if (result.ok) {
      std::printf("[PASS] criterion %2d: %s (%.2fs)\n", criterion.number,
                  criterion.title.c_str(), dt);
    } else {
      std::printf("[FAIL] criterion %2d: %s (%.2fs) - %s\n", criterion.number,
                  criterion.title.c_str(), dt, result.detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
