// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/certify.hpp"
#include "qcorr/families.hpp"
#include "qcorr/witness.hpp"

namespace qcorr::cli {

/// Number formatting used for every emitted value: 17 significant digits,
/// enough to round-trip a 64-bit float.
std::string format_double(double v);

// ---------------------------------------------------------------------------
// Inputs
// ---------------------------------------------------------------------------

struct GridPoint {
  BlochVector a;
  BlochVector b;
  std::array<double, 3> c;
};

/// A witness/certify subject: named strategy and/or box (+ the measurements
/// that generated it, when known).
struct ResolvedInput {
  std::string label;
  std::optional<NamedStrategy> strategy;
  std::optional<Box> box;
  std::optional<std::array<BinaryPovm, 2>> bob_meas;
};

struct InputDocument {
  std::optional<ResolvedInput> subject;
  std::vector<GridPoint> grid;  // canonical-state grid for `sweep`
};

/// Resolve a --family identifier.
ResolvedInput family_input(const std::string& family_spec);

/// Parse and validate an input JSON document (see share/input-schema.json).
InputDocument load_input_document(const std::string& path);

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

enum class Metric { W, Q, WL, PB, PMIN, CHSH, HMIN };

/// Parse a comma-separated metric list ("w,q,hmin"); empty selects all
/// metrics applicable to the input.
std::vector<Metric> parse_metrics(const std::string& text);

struct MetricRow {
  std::string name;
  double value = 0.0;
  std::vector<std::string> exceeded;  // thresholds this value crosses
};

std::vector<MetricRow> evaluate_metrics(const ResolvedInput& input,
                                        std::vector<Metric> metrics);

void write_metrics_csv(std::ostream& os, const std::vector<MetricRow>& rows);
void write_metrics_jsonl(std::ostream& os, const std::string& input_label,
                         const std::vector<MetricRow>& rows);

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepRange {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
};

/// Parse "a:b:n" with n >= 2.
SweepRange parse_range(const std::string& text);

struct SweepRow {
  double param = 0.0;
  double q = 0.0, w = 0.0, wl = 0.0, pb = 0.0, pmin = 0.0, chsh = 0.0,
         hmin = 0.0, f_q = 0.0;
};

/// Sweep a parameterized family ("werner" or "wn-bb84") over the range.
std::vector<SweepRow> sweep_family(const std::string& family_base,
                                   const SweepRange& range, int threads);

/// Sweep a canonical-state grid using the aligned construction.
std::vector<SweepRow> sweep_grid(const std::vector<GridPoint>& grid, int threads);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_sweep_jsonl(std::ostream& os, const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

/// Run one of {local, superlocal, unsteerable, superunsteerable} and write a
/// JSON-lines report (one object per verdict, stage lines first).
void run_certify(std::ostream& os, const ResolvedInput& input,
                 const std::string& mode, int dlambda, const SearchConfig& cfg);

void write_family_list(std::ostream& os);

}  // namespace qcorr::cli
