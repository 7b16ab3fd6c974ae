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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tloops/bench.hpp"
#include "tloops/evaluator.hpp"

namespace {

using namespace tloops;

void run_entry(benchmark::State& state, const bench::SuiteEntry& entry, EvalMode mode) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FieldStore env = bench::random_fields(entry.statement.fields, n);
  const DataCount count = count_data(entry.statement);
  for (auto _ : state) {
    eval(entry.statement, env, mode);
    benchmark::ClobberMemory();
  }
  const double bytes = 8.0 * (static_cast<double>(count.elements) * static_cast<double>(n) +
                              static_cast<double>(count.doubles));
  state.counters["bw_eff"] = benchmark::Counter(
      bytes, benchmark::Counter::kIsIterationInvariantRate, benchmark::Counter::kIs1000);
  state.counters["N_e"] = static_cast<double>(count.elements);
  state.counters["N_d"] = static_cast<double>(count.doubles);
}

const std::vector<bench::SuiteEntry>& entries() {
  static const std::vector<bench::SuiteEntry> all = [] {
    std::vector<bench::SuiteEntry> out = bench::builtin_suite();
    for (bench::SuiteEntry& e : bench::dim4_fixtures()) out.push_back(std::move(e));
    return out;
  }();
  return all;
}

int register_all() {
  for (const bench::SuiteEntry& e : entries()) {
    for (EvalMode mode : {EvalMode::kWholeTensor, EvalMode::kPerComponent}) {
      const std::string name = e.name + "/" + std::string(eval_mode_name(mode));
      benchmark::RegisterBenchmark(name.c_str(), [&e, mode](benchmark::State& s) {
        run_entry(s, e, mode);
      })->RangeMultiplier(8)->Range(64, 32768);
    }
  }
  return 0;
}

const int registered = register_all();

}  // namespace

BENCHMARK_MAIN();
