// Copyright 2026 The TLoops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "tloops/bench.hpp"
#include "tloops/error.hpp"
#include "tloops/evaluator.hpp"
#include "tloops/parser.hpp"
#include "tloops/registry.hpp"
#include "tloops/tldf.hpp"

namespace {

using namespace tloops;

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitIo = 2;

struct IoFailure {
  std::string message;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{path + ": cannot open file"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure{path + ": read failed"};
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure{path + ": cannot open for writing"};
  out << text;
  if (!out) throw IoFailure{path + ": write failed"};
}

// Parse and validate; prints diagnostics and returns false on any.
bool load_program(const std::string& path, ValidatedProgram& out,
                  Program* program = nullptr) {
  const std::string text = read_text(path);
  ParseResult parsed = parse_program(text);
  if (!parsed.ok()) {
    for (const Diagnostic& d : parsed.diagnostics) {
      std::cerr << format_diagnostic(path, d) << "\n";
    }
    return false;
  }
  out = validate_program(parsed.program);
  if (!out.ok()) {
    for (const Diagnostic& d : out.diagnostics) {
      std::cerr << format_diagnostic(path, d) << "\n";
    }
    return false;
  }
  if (program != nullptr) *program = std::move(parsed.program);
  return true;
}

int exit_for(const Error& e) {
  return e.code() == ErrorCode::kIo ? kExitIo : kExitDiagnostics;
}

int cmd_check(const std::string& file) {
  ValidatedProgram p;
  return load_program(file, p) ? kExitOk : kExitDiagnostics;
}

int cmd_eval(const std::string& file, const std::string& data, const std::string& out,
             bool per_component, unsigned threads) {
  ValidatedProgram p;
  if (!load_program(file, p)) return kExitDiagnostics;
  FieldStore env = read_tldf(data);
  EvalOptions opts;
  opts.threads = threads;
  const EvalMode mode = per_component ? EvalMode::kPerComponent : EvalMode::kWholeTensor;
  for (const ValidatedStatement& s : p.statements) {
    try {
      eval(s, env, mode, opts);
    } catch (const Error& e) {
      std::cerr << file << ":" << s.stmt.loc.line << ":" << s.stmt.loc.column << ": error["
                << error_code_name(e.code()) << "]: " << e.what() << "\n";
      return exit_for(e);
    }
  }
  write_tldf(out, env);
  return kExitOk;
}

int cmd_codegen(const std::string& file, const std::string& backend_text,
                const std::string& out_dir) {
  const auto backend = parse_backend(backend_text);
  if (!backend) {
    std::cerr << "unknown backend '" << backend_text << "' (expected c, cuda or both)\n";
    return kExitDiagnostics;
  }
  ValidatedProgram p;
  if (!load_program(file, p)) return kExitDiagnostics;
  Registry registry;
  for (const ValidatedStatement& s : p.statements) registry.add(s);
  if (registry.empty()) {
    std::cerr << file << ": nothing to generate\n";
    return kExitDiagnostics;
  }
  write_all(registry, out_dir, *backend);
  std::cout << (std::filesystem::path(out_dir) / std::string(kManifestFile)).string() << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string file;
  std::vector<std::size_t> grids;
  std::string mode = "whole-tensor";
  std::string csv;
  std::string json;
  int reps = bench::kDefaultReps;
  std::uint64_t seed = bench::kDefaultSeed;
  unsigned threads = 1;
  bool extras = false;
};

std::string results_json(const std::vector<bench::BenchResult>& results) {
  nlohmann::json rows = nlohmann::json::array();
  for (const bench::BenchResult& r : results) {
    rows.push_back({{"name", r.name},
                    {"mode", std::string(eval_mode_name(r.mode))},
                    {"N", r.n},
                    {"t_median_s", r.t},
                    {"bw_eff_gbps", r.bw_eff},
                    {"N_e", r.count.elements},
                    {"N_d", r.count.doubles}});
  }
  return rows.dump(2) + "\n";
}

int cmd_bench(const BenchArgs& a) {
  std::vector<bench::SuiteEntry> entries;
  if (a.file.empty()) {
    entries = bench::builtin_suite();
    if (a.extras) {
      for (bench::SuiteEntry& e : bench::dim4_fixtures()) entries.push_back(std::move(e));
    }
  } else {
    ValidatedProgram p;
    if (!load_program(a.file, p)) return kExitDiagnostics;
    entries = bench::program_entries(p);
  }
  bench::SweepOptions opts;
  if (!a.grids.empty()) opts.grids = a.grids;
  if (a.mode == "whole-tensor") {
    opts.modes = {EvalMode::kWholeTensor};
  } else if (a.mode == "per-component") {
    opts.modes = {EvalMode::kPerComponent};
  } else {
    opts.modes = {EvalMode::kWholeTensor, EvalMode::kPerComponent};
  }
  opts.seed = a.seed;
  opts.run.reps = a.reps;
  opts.run.threads = a.threads;
  const std::vector<bench::BenchResult> results = bench::sweep(entries, opts);
  if (!a.csv.empty()) write_text(a.csv, bench::to_csv(results));
  if (!a.json.empty()) write_text(a.json, results_json(results));
  if (a.csv.empty() && a.json.empty()) std::cout << bench::to_csv(results);
  return kExitOk;
}

int cmd_init_data(const std::string& file, const std::string& out, std::size_t n,
                  std::uint64_t seed) {
  ValidatedProgram p;
  Program program;
  if (!load_program(file, p, &program)) return kExitDiagnostics;
  write_tldf(out, bench::random_fields(program.declaration_map(), n, seed));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-loop compiler: check, evaluate, generate and benchmark .tl programs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("tloopsc 0.1.0"));

  std::string file;
  auto* check = app.add_subcommand("check", "Parse and validate a program");
  check->add_option("file", file, "Program (.tl)")->required();

  std::string data;
  std::string out;
  bool per_component = false;
  unsigned threads = 1;
  auto* evalc = app.add_subcommand("eval", "Run a program over a TLDF data file");
  evalc->add_option("file", file, "Program (.tl)")->required();
  evalc->add_option("--data", data, "Input fields (.tldf)")->required();
  evalc->add_option("--out", out, "Output fields (.tldf)")->required();
  evalc->add_flag("--per-component", per_component, "Evaluate one component at a time");
  evalc->add_option("--threads", threads, "Worker threads over the grid")
      ->check(CLI::Range(1u, 1024u));

  std::string backend = "c";
  std::string out_dir;
  auto* codegen = app.add_subcommand("codegen", "Emit C and/or CUDA sources");
  codegen->add_option("file", file, "Program (.tl)")->required();
  codegen->add_option("--backend", backend, "c, cuda or both")
      ->check(CLI::IsMember({"c", "cuda", "both"}));
  codegen->add_option("--out-dir", out_dir, "Output directory")->required();

  BenchArgs ba;
  auto* benchc = app.add_subcommand("bench", "Effective-bandwidth sweep");
  auto* suite_flag = benchc->add_flag("--suite", "Built-in suite (default)");
  benchc->add_option("--file", ba.file, "Benchmark the statements of a program")
      ->excludes(suite_flag);
  benchc->add_option("--grids", ba.grids, "Ascending multiples of 32")->delimiter(',');
  benchc->add_option("--mode", ba.mode, "whole-tensor, per-component or both")
      ->check(CLI::IsMember({"whole-tensor", "per-component", "both"}));
  benchc->add_option("--csv", ba.csv, "CSV output path (stdout when no output is given)");
  benchc->add_option("--json", ba.json, "JSON output path");
  benchc->add_option("--reps", ba.reps, "Repetitions; the first is discarded")
      ->check(CLI::Range(2, 100000));
  benchc->add_option("--seed", ba.seed, "Field data seed");
  benchc->add_option("--threads", ba.threads, "Worker threads over the grid")
      ->check(CLI::Range(1u, 1024u));
  benchc->add_flag("--extras", ba.extras, "Add the two dim-4 contraction fixtures");

  std::size_t gridsize = 64;
  std::uint64_t seed = bench::kDefaultSeed;
  auto* init = app.add_subcommand("init-data", "Write random fields for a program's declarations");
  init->add_option("file", file, "Program (.tl)")->required();
  init->add_option("--out", out, "Output fields (.tldf)")->required();
  init->add_option("--gridsize", gridsize, "Grid points per component");
  init->add_option("--seed", seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitDiagnostics;
  }

  try {
    if (*check) return cmd_check(file);
    if (*evalc) return cmd_eval(file, data, out, per_component, threads);
    if (*codegen) return cmd_codegen(file, backend, out_dir);
    if (*benchc) return cmd_bench(ba);
    if (*init) return cmd_init_data(file, out, gridsize, seed);
  } catch (const IoFailure& e) {
    std::cerr << e.message << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_for(e);
  }
  return kExitDiagnostics;
}
