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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tloops/analysis.hpp"
#include "tloops/evaluator.hpp"
#include "tloops/field.hpp"
#include "tloops/parser.hpp"

namespace tloops::bench {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr int kDefaultReps = 21;

struct SuiteEntry {
  std::string name;
  ValidatedStatement statement;
};

/// Source text of the fourteen dim-3 suite statements with their
/// declarations, one statement per line in suite order.
std::string_view builtin_suite_source();

/// assign1-3, add1-3, outer1-3, contract1-3, kij, christoffel.
std::vector<SuiteEntry> builtin_suite();

/// Two dim-4 contractions with known data volume: a symmetric rank-2
/// contraction (N_e 42) and one with fixed and offset indices (N_e 19).
std::vector<SuiteEntry> dim4_fixtures();

/// Entries for every statement of an arbitrary program, named `s<k>`.
std::vector<SuiteEntry> program_entries(const ValidatedProgram& program);

/// Uniform doubles in the open interval (0,1) from 53 random bits.
class UniformOpen01 {
 public:
  explicit UniformOpen01(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}
  double operator()();

 private:
  std::mt19937_64 engine_;
};

/// Every tensor and scalar field of `decls`, gridsize `n`, filled from one
/// generator stream in name order (components in slot order); constants
/// take their declared values.
FieldStore random_fields(const Declarations& decls, std::size_t n,
                         std::uint64_t seed = kDefaultSeed);

/// Fields of every statement's declarations merged, as random_fields.
FieldStore random_fields(const std::vector<SuiteEntry>& entries, std::size_t n,
                         std::uint64_t seed = kDefaultSeed);

/// Seconds from an arbitrary monotonic origin.
using Clock = std::function<double()>;

Clock steady_clock();

struct BenchResult {
  std::string name;
  EvalMode mode = EvalMode::kWholeTensor;
  std::size_t n = 0;
  double t = 0.0;       // median seconds
  double bw_eff = 0.0;  // GB/s
  DataCount count;
};

/// 8*(N_e*N + N_d)/t/1e9.
double bw_eff_gbps(const DataCount& count, std::size_t n, double t);

/// Median of samples[1..]: the first run is discarded.
double median_after_warmup(std::vector<double> samples);

struct RunOptions {
  int reps = kDefaultReps;
  unsigned threads = 1;
  Clock clock;  // steady_clock() when empty
};

/// Time `reps` evaluations of the entry on `env` (gridsize N > 0).
BenchResult run(const SuiteEntry& entry, FieldStore& env, EvalMode mode,
                const RunOptions& opts = {});

/// 32, 64, ..., 65536.
std::vector<std::size_t> default_grids();

struct SweepOptions {
  std::vector<std::size_t> grids = default_grids();
  std::vector<EvalMode> modes = {EvalMode::kWholeTensor};
  std::uint64_t seed = kDefaultSeed;
  RunOptions run;
};

/// Throws Error(kInvalidArgument) unless grids are ascending multiples of 32.
void check_grids(const std::vector<std::size_t>& grids);

/// Every entry at every gridsize in every mode, statement-major.
std::vector<BenchResult> sweep(const std::vector<SuiteEntry>& entries,
                               const SweepOptions& opts = {});

inline constexpr std::string_view kCsvHeader =
    "name,mode,N,t_median_s,bw_eff_gbps,N_e,N_d";

std::string csv_row(const BenchResult& r);
std::string to_csv(const std::vector<BenchResult>& results);

}  // namespace tloops::bench
