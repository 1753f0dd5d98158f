// SPDX-License-Identifier: Apache-2.0
#include "cli_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qcorr::cli {

namespace {

using nlohmann::json;

void parallel_rows(int n, int threads, const std::function<void(int)>& work) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += workers) work(i);
    });
  for (auto& th : pool) th.join();
}

BlochVector parse_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(what + " must be an array of 3 numbers");
  for (const auto& v : j)
    if (!v.is_number()) throw ParseError(what + " must contain numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::array<double, 3> parse_triple(const json& j, const std::string& what) {
  const BlochVector v = parse_vec3(j, what);
  return {v.x, v.y, v.z};
}

BinaryPovm parse_povm(const json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be an object");
  for (const auto& key : {"gamma0", "eta", "direction"})
    if (!j.contains(key)) throw ParseError(what + " is missing '" + key + "'");
  const double gamma0 = j.at("gamma0").get<double>();
  const double eta = j.at("eta").get<double>();
  const BlochVector dir = parse_vec3(j.at("direction"), what + ".direction");
  return BinaryPovm(gamma0, 1.0 - gamma0, eta, dir);
}

std::array<BinaryPovm, 2> parse_povm_pair(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(what + " must be an array of 2 measurements");
  return {parse_povm(j[0], what + "[0]"), parse_povm(j[1], what + "[1]")};
}

TwoQubitDensity parse_state(const json& j) {
  if (!j.is_object()) throw ParseError("'state' must be an object");
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 16)
      throw ParseError("'state.matrix' must hold 16 [re, im] pairs, row major");
    Mat4 op;
    for (int i = 0; i < 16; ++i) {
      const auto& entry = m[i];
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError("'state.matrix' entries must be [re, im] pairs");
      op.e[i] = complex_t(entry[0].get<double>(), entry[1].get<double>());
    }
    return TwoQubitDensity(op);
  }
  for (const auto& key : {"a", "b", "c"})
    if (!j.contains(key))
      throw ParseError("'state' needs either 'matrix' or the canonical 'a','b','c'");
  const BlochVector a = parse_vec3(j.at("a"), "state.a");
  const BlochVector b = parse_vec3(j.at("b"), "state.b");
  return canonical_two_qubit(a, b, parse_triple(j.at("c"), "state.c"));
}

Box parse_box(const json& j) {
  Box box;
  if (!j.is_array() || j.size() != 2) throw ParseError("'box' must be p[x][y][a][b]");
  for (int x = 0; x < 2; ++x) {
    if (!j[x].is_array() || j[x].size() != 2)
      throw ParseError("'box' must be p[x][y][a][b]");
    for (int y = 0; y < 2; ++y) {
      if (!j[x][y].is_array() || j[x][y].size() != 2)
        throw ParseError("'box' must be p[x][y][a][b]");
      for (int a = 0; a < 2; ++a) {
        if (!j[x][y][a].is_array() || j[x][y][a].size() != 2)
          throw ParseError("'box' must be p[x][y][a][b]");
        for (int b = 0; b < 2; ++b) {
          if (!j[x][y][a][b].is_number())
            throw ParseError("'box' entries must be numbers");
          box.p[x][y][a][b] = j[x][y][a][b].get<double>();
        }
      }
    }
  }
  box.validate();
  return box;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  out += '"';
  return out;
}

struct DerivedTables {
  SequentialTable seq;
  ConditionalTable cond;
  std::optional<Box> box;
};

DerivedTables derive_tables(const ResolvedInput& input) {
  DerivedTables out;
  if (input.strategy.has_value()) {
    out.seq = sequential_of(*input.strategy);
    out.cond = conditional_of(*input.strategy);
    out.box = box_of(*input.strategy);
    if (!out.box.has_value() && input.box.has_value()) out.box = input.box;
    return out;
  }
  if (!input.box.has_value())
    throw ConfigError("input '" + input.label + "' resolves to no strategy or box");
  out.box = input.box;
  out.cond = box_to_conditional(*input.box);
  out.seq = sequential_view(out.cond);
  return out;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::W: return "W";
    case Metric::Q: return "Q";
    case Metric::WL: return "WL";
    case Metric::PB: return "PB";
    case Metric::PMIN: return "PMIN";
    case Metric::CHSH: return "CHSH";
    case Metric::HMIN: return "HMIN";
  }
  return "?";
}

void emit_certify_line(std::ostream& os, const std::string& command,
                       const std::string& input, const std::string& verdict,
                       double residual, int dlambda, int restarts,
                       std::uint64_t seed, bool heuristic) {
  os << "{\"command\": " << json_string(command) << ", \"input\": "
     << json_string(input) << ", \"verdict\": " << json_string(verdict)
     << ", \"residual\": " << format_double(residual) << ", \"dlambda\": "
     << dlambda << ", \"restarts\": " << restarts << ", \"seed\": " << seed
     << ", \"heuristic\": " << (heuristic ? "true" : "false") << "}\n";
}

void emit_search_line(std::ostream& os, const std::string& command,
                      const std::string& input, const ModelSearchReport& r,
                      int dlambda) {
  emit_certify_line(os, command, input, to_string(r.verdict), r.residual, dlambda,
                    r.restarts, r.seed, r.heuristic);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ResolvedInput family_input(const std::string& family_spec) {
  const FamilyInstance fam = make_family(family_spec);
  ResolvedInput in;
  in.label = fam.name;
  in.strategy = fam.strategy;
  in.box = fam.box;
  in.bob_meas = fam.bob_meas;
  return in;
}

InputDocument load_input_document(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open input file '" + path + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ParseError("input document must be a JSON object");

  InputDocument out;
  if (doc.contains("grid")) {
    const auto& grid = doc.at("grid");
    if (!grid.is_array() || grid.empty())
      throw ParseError("'grid' must be a nonempty array of {a, b, c} states");
    for (const auto& g : grid) {
      GridPoint pt;
      pt.a = g.contains("a") ? parse_vec3(g.at("a"), "grid.a") : BlochVector{};
      pt.b = g.contains("b") ? parse_vec3(g.at("b"), "grid.b") : BlochVector{};
      if (!g.contains("c")) throw ParseError("grid entries need 'c'");
      pt.c = parse_triple(g.at("c"), "grid.c");
      canonical_two_qubit(pt.a, pt.b, pt.c);  // validate physicality now
      out.grid.push_back(pt);
    }
    return out;
  }

  const int forms = static_cast<int>(doc.contains("preps")) +
                    static_cast<int>(doc.contains("state")) +
                    static_cast<int>(doc.contains("box"));
  if (forms != 1)
    throw ParseError("input must contain exactly one of 'preps', 'state', 'box'");

  ResolvedInput in;
  in.label = path;
  if (doc.contains("preps")) {
    const auto& preps = doc.at("preps");
    if (!preps.is_array() || preps.size() != 4)
      throw ParseError("'preps' must hold 4 Bloch vectors (labels 00,01,10,11)");
    if (!doc.contains("bob")) throw ParseError("'preps' input needs 'bob'");
    if (doc.contains("alice"))
      throw ParseError("'preps' input must not carry 'alice'");
    NamedStrategy s;
    s.label = path;
    s.preps = {bloch_to_density(parse_vec3(preps[0], "preps[0]")),
               bloch_to_density(parse_vec3(preps[1], "preps[1]")),
               bloch_to_density(parse_vec3(preps[2], "preps[2]")),
               bloch_to_density(parse_vec3(preps[3], "preps[3]"))};
    s.bob = parse_povm_pair(doc.at("bob"), "bob");
    in.strategy = s;
  } else if (doc.contains("state")) {
    if (!doc.contains("alice") || !doc.contains("bob"))
      throw ParseError("'state' input needs 'alice' and 'bob'");
    NamedStrategy s;
    s.label = path;
    s.state = parse_state(doc.at("state"));
    s.alice = parse_povm_pair(doc.at("alice"), "alice");
    s.bob = parse_povm_pair(doc.at("bob"), "bob");
    in.strategy = s;
    in.bob_meas = s.bob;
  } else {
    in.box = parse_box(doc.at("box"));
    if (doc.contains("bob"))
      in.bob_meas = parse_povm_pair(doc.at("bob"), "bob");
  }
  out.subject = in;
  return out;
}

std::vector<Metric> parse_metrics(const std::string& text) {
  if (text.empty()) return {};
  std::vector<Metric> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string key;
    for (char c : item)
      if (!std::isspace(static_cast<unsigned char>(c)))
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == "w") out.push_back(Metric::W);
    else if (key == "q") out.push_back(Metric::Q);
    else if (key == "wl") out.push_back(Metric::WL);
    else if (key == "pb") out.push_back(Metric::PB);
    else if (key == "pmin") out.push_back(Metric::PMIN);
    else if (key == "chsh") out.push_back(Metric::CHSH);
    else if (key == "hmin") out.push_back(Metric::HMIN);
    else throw ParseError("unknown metric '" + item + "'");
  }
  if (out.empty()) throw ParseError("empty metric list");
  return out;
}

std::vector<MetricRow> evaluate_metrics(const ResolvedInput& input,
                                        std::vector<Metric> metrics) {
  const DerivedTables tables = derive_tables(input);
  if (metrics.empty()) {
    metrics = {Metric::W, Metric::Q, Metric::WL, Metric::PB, Metric::PMIN,
               Metric::HMIN};
    if (tables.box.has_value()) metrics.push_back(Metric::CHSH);
  }

  std::vector<MetricRow> rows;
  for (const Metric m : metrics) {
    MetricRow row;
    row.name = metric_name(m);
    switch (m) {
      case Metric::W:
        row.value = witness_w(tables.seq).value;
        if (row.value > 1e-9) row.exceeded.push_back("W>0");
        break;
      case Metric::Q:
        row.value = quantity_q(tables.cond).value;
        if (row.value > 1e-9) row.exceeded.push_back("Q>0");
        break;
      case Metric::WL:
        row.value = linear_witness_wl(tables.seq).value;
        if (std::abs(row.value) > 2.0 + 1e-12) row.exceeded.push_back("|WL|>2");
        break;
      case Metric::PB:
        row.value = rac_average_success(tables.seq).value;
        if (row.value > 0.75 + 1e-12) row.exceeded.push_back("PB>3/4");
        break;
      case Metric::PMIN:
        row.value = rac_worst_case(tables.seq).value;
        if (row.value > sl_threshold(2, false) + 1e-12)
          row.exceeded.push_back("PMIN>2/3 (SL2)");
        if (row.value > 0.5 + 1e-12) row.exceeded.push_back("PMIN>1/2 (SL1/SL3)");
        break;
      case Metric::CHSH:
        if (!tables.box.has_value())
          throw ConfigError("metric CHSH needs a joint box input");
        row.value = chsh_value(*tables.box).value;
        if (row.value > 2.0 + 1e-12) row.exceeded.push_back("CHSH>2");
        break;
      case Metric::HMIN:
        row.value = min_entropy(quantity_q(tables.cond).value);
        break;
    }
    if (!std::isfinite(row.value))
      throw InvariantViolation("metric " + row.name + " is not finite");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricRow>& rows) {
  os << "metric,value,thresholds_exceeded\n";
  for (const auto& row : rows) {
    os << row.name << ',' << format_double(row.value) << ',';
    for (std::size_t i = 0; i < row.exceeded.size(); ++i) {
      if (i) os << ';';
      os << row.exceeded[i];
    }
    os << '\n';
  }
}

void write_metrics_jsonl(std::ostream& os, const std::string& input_label,
                         const std::vector<MetricRow>& rows) {
  for (const auto& row : rows) {
    os << "{\"command\": \"witness\", \"input\": " << json_string(input_label)
       << ", \"metric\": " << json_string(row.name)
       << ", \"value\": " << format_double(row.value) << ", \"exceeded\": [";
    for (std::size_t i = 0; i < row.exceeded.size(); ++i) {
      if (i) os << ", ";
      os << json_string(row.exceeded[i]);
    }
    os << "]}\n";
  }
}

SweepRange parse_range(const std::string& text) {
  SweepRange r;
  const auto p1 = text.find(':');
  const auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw ParseError("--range must look like start:stop:steps");
  try {
    std::size_t used = 0;
    r.start = std::stod(text.substr(0, p1), &used);
    r.stop = std::stod(text.substr(p1 + 1, p2 - p1 - 1), &used);
    r.steps = std::stoi(text.substr(p2 + 1), &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse --range '" + text + "'");
  }
  if (r.steps < 2) throw ParseError("--range needs at least 2 steps");
  return r;
}

namespace {

SweepRow sweep_row_from_tables(double param, const DerivedTables& tables) {
  SweepRow row;
  row.param = param;
  row.q = quantity_q(tables.cond).value;
  row.w = witness_w(tables.seq).value;
  row.wl = linear_witness_wl(tables.seq).value;
  row.pb = rac_average_success(tables.seq).value;
  row.pmin = rac_worst_case(tables.seq).value;
  row.chsh = tables.box.has_value() ? chsh_value(*tables.box).value : 0.0;
  row.f_q = guessing_bound(row.q);
  row.hmin = min_entropy(row.q);
  for (const double v : {row.q, row.w, row.wl, row.pb, row.pmin, row.chsh,
                         row.hmin, row.f_q})
    if (!std::isfinite(v))
      throw InvariantViolation("sweep produced a non-finite witness value");
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_family(const std::string& family_base,
                                   const SweepRange& range, int threads) {
  if (family_base != "werner" && family_base != "wn-bb84")
    throw ParseError("sweep needs a parameterized family (werner or wn-bb84)");
  std::vector<SweepRow> rows(range.steps);
  parallel_rows(range.steps, threads, [&](int i) {
    const double v =
        range.start + (range.stop - range.start) * i / (range.steps - 1);
    const ResolvedInput in =
        family_input(family_base + ":" + format_double(v));
    rows[i] = sweep_row_from_tables(v, derive_tables(in));
  });
  return rows;
}

std::vector<SweepRow> sweep_grid(const std::vector<GridPoint>& grid, int threads) {
  std::vector<SweepRow> rows(grid.size());
  parallel_rows(static_cast<int>(grid.size()), threads, [&](int i) {
    const GridPoint& g = grid[i];
    const MeasurementPair meas = aligned_measurements();
    const TwoQubitDensity state = canonical_two_qubit(g.a, g.b, g.c);
    DerivedTables tables;
    tables.cond = conditional_table(steer_assemblage(state, meas.alice), meas.bob);
    tables.seq = sequential_view(tables.cond);
    tables.box = box_from_state(state, meas.alice, meas.bob);
    rows[i] = sweep_row_from_tables(static_cast<double>(i), tables);
  });
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "param,Q,W,WL,PB,PMIN,CHSH,HMIN,f_Q\n";
  for (const auto& r : rows) {
    os << format_double(r.param) << ',' << format_double(r.q) << ','
       << format_double(r.w) << ',' << format_double(r.wl) << ','
       << format_double(r.pb) << ',' << format_double(r.pmin) << ','
       << format_double(r.chsh) << ',' << format_double(r.hmin) << ','
       << format_double(r.f_q) << '\n';
  }
}

void write_sweep_jsonl(std::ostream& os, const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    os << "{\"command\": \"sweep\", \"param\": " << format_double(r.param)
       << ", \"Q\": " << format_double(r.q) << ", \"W\": " << format_double(r.w)
       << ", \"WL\": " << format_double(r.wl) << ", \"PB\": " << format_double(r.pb)
       << ", \"PMIN\": " << format_double(r.pmin)
       << ", \"CHSH\": " << format_double(r.chsh)
       << ", \"HMIN\": " << format_double(r.hmin)
       << ", \"f_Q\": " << format_double(r.f_q) << "}\n";
  }
}

void run_certify(std::ostream& os, const ResolvedInput& input,
                 const std::string& mode, int dlambda, const SearchConfig& cfg) {
  Box box;
  if (input.box.has_value()) {
    box = *input.box;
  } else if (input.strategy.has_value()) {
    const auto maybe = box_of(*input.strategy);
    if (!maybe.has_value())
      throw ConfigError("certify needs a box; preparation-only strategies have none");
    box = *maybe;
  } else {
    throw ConfigError("certify needs a box input");
  }
  box.validate();

  const auto need_bob = [&]() -> std::array<BinaryPovm, 2> {
    if (input.bob_meas.has_value()) return *input.bob_meas;
    if (input.strategy.has_value()) return input.strategy->bob;
    throw ConfigError("unsteerability certification needs Bob's measurements "
                      "('bob' in the input document)");
  };

  if (mode == "local") {
    const ModelSearchReport r = local_membership(box);
    emit_search_line(os, "certify.local", input.label, r,
                     r.local_model ? r.local_model->dlambda : 0);
  } else if (mode == "superlocal") {
    const SuperlocalityReport rep = superlocality_verdict(box, cfg);
    emit_search_line(os, "certify.superlocal.membership", input.label, rep.membership,
                     rep.membership.local_model ? rep.membership.local_model->dlambda : 0);
    if (rep.bounded.has_value())
      emit_search_line(os, "certify.superlocal.search", input.label, *rep.bounded, 2);
    const double residual =
        rep.bounded.has_value() ? rep.bounded->residual : rep.membership.residual;
    emit_certify_line(os, "certify.superlocal", input.label, to_string(rep.verdict),
                      residual, 2, rep.bounded ? rep.bounded->restarts : 0, cfg.seed,
                      rep.heuristic);
  } else if (mode == "unsteerable") {
    const ModelSearchReport r = bounded_lhs_search(box, need_bob(), dlambda, cfg);
    emit_search_line(os, "certify.unsteerable", input.label, r, dlambda);
  } else if (mode == "superunsteerable") {
    const SuperunsteerabilityReport rep =
        superunsteerability_verdict(box, need_bob(), cfg);
    emit_search_line(os, "certify.superunsteerable.dim4", input.label, rep.at_dim4, 4);
    if (rep.at_dim_alice.has_value())
      emit_search_line(os, "certify.superunsteerable.dim2", input.label,
                       *rep.at_dim_alice, 2);
    const double residual = rep.at_dim_alice.has_value() ? rep.at_dim_alice->residual
                                                         : rep.at_dim4.residual;
    emit_certify_line(os, "certify.superunsteerable", input.label,
                      to_string(rep.verdict), residual, 2,
                      rep.at_dim_alice ? rep.at_dim_alice->restarts : rep.at_dim4.restarts,
                      cfg.seed, rep.heuristic);
  } else {
    throw ConfigError("unknown certify mode '" + mode + "'");
  }
}

void write_family_list(std::ostream& os) {
  for (const auto& fam : family_catalog()) {
    os << fam.name;
    if (!fam.parameter.empty()) os << ':' << fam.parameter;
    os << "  -  " << fam.summary << '\n';
  }
}

}  // namespace qcorr::cli
