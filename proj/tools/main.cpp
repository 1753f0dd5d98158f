// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli_io.hpp"

namespace {

using namespace qcorr;
using namespace qcorr::cli;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

struct CommonInput {
  std::string family;
  std::string input_path;
};

ResolvedInput resolve(const CommonInput& ci) {
  if (ci.family.empty() == ci.input_path.empty())
    throw ConfigError("provide exactly one of --family or --input");
  if (!ci.family.empty()) return family_input(ci.family);
  const InputDocument doc = load_input_document(ci.input_path);
  if (!doc.subject.has_value())
    throw ConfigError("'" + ci.input_path + "' holds a grid; use the sweep command");
  return *doc.subject;
}

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-setting quantum correlation witnesses and certification"};
  app.set_version_flag("--version", "qcorr 0.1.0");
  app.require_subcommand(1);

  std::string family, input_path, metrics_text, range_text, out_path;
  std::string format = "csv";
  int dlambda = 2;
  int restarts = 64;
  int threads = 1;
  std::uint64_t seed = 1;

  auto* witness = app.add_subcommand("witness", "evaluate witnesses on an input");
  witness->add_option("--family", family, "family identifier (see `family list`)");
  witness->add_option("--input", input_path, "input JSON document");
  witness->add_option("--metrics", metrics_text, "comma list: w,q,wl,pb,pmin,chsh,hmin");
  witness->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  witness->add_option("--out", out_path, "output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "sweep a family parameter or a state grid");
  sweep->add_option("--family", family, "werner or wn-bb84");
  sweep->add_option("--range", range_text, "start:stop:steps");
  sweep->add_option("--input", input_path, "grid JSON document");
  sweep->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "output path (default stdout)");

  auto* certify = app.add_subcommand("certify", "polytope membership and model search");
  certify->require_subcommand(1);
  std::string certify_mode;
  for (const char* mode : {"local", "superlocal", "unsteerable", "superunsteerable"}) {
    auto* sub = certify->add_subcommand(mode);
    sub->parse_complete_callback([&certify_mode, mode] { certify_mode = mode; });
    sub->add_option("--family", family, "family identifier");
    sub->add_option("--input", input_path, "input JSON document");
    sub->add_option("--dlambda", dlambda, "hidden-variable dimension bound")
        ->check(CLI::Range(1, 4));
    sub->add_option("--restarts", restarts, "multistart count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "search seed");
    sub->add_option("--threads", threads, "parallel restarts")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "output path (default stdout)");
  }

  auto* family_cmd = app.add_subcommand("family", "family registry");
  family_cmd->require_subcommand(1);
  auto* family_list = family_cmd->add_subcommand("list", "list known families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    OutputTarget out(out_path);

    if (witness->parsed()) {
      const ResolvedInput in = resolve({family, input_path});
      const auto rows = evaluate_metrics(in, parse_metrics(metrics_text));
      if (format == "csv") write_metrics_csv(out.stream(), rows);
      else write_metrics_jsonl(out.stream(), in.label, rows);
    } else if (sweep->parsed()) {
      std::vector<SweepRow> rows;
      if (!input_path.empty()) {
        const InputDocument doc = load_input_document(input_path);
        if (doc.grid.empty())
          throw ConfigError("sweep --input expects a document with 'grid'");
        rows = sweep_grid(doc.grid, threads);
      } else {
        if (family.empty()) throw ConfigError("sweep needs --family or --input");
        if (range_text.empty()) throw ConfigError("sweep needs --range start:stop:steps");
        rows = sweep_family(family, parse_range(range_text), threads);
      }
      if (format == "csv") write_sweep_csv(out.stream(), rows);
      else write_sweep_jsonl(out.stream(), rows);
    } else if (certify->parsed()) {
      SearchConfig cfg;
      cfg.restarts = restarts;
      cfg.seed = seed;
      cfg.threads = threads;
      const ResolvedInput in = resolve({family, input_path});
      run_certify(out.stream(), in, certify_mode, dlambda, cfg);
    } else if (family_cmd->parsed() && family_list->parsed()) {
      write_family_list(out.stream());
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedN& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // Invariant violations in the input data (positivity, nonsignaling,
    // conditioning on impossible outcomes, domain errors).
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}
