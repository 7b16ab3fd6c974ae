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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "goldens.hpp"
#include "oracle.hpp"
#include "tloops/bench.hpp"
#include "tloops/codegen_cuda.hpp"
#include "tloops/evaluator.hpp"
#include "tloops/symmetry.hpp"

namespace {

using namespace tloops;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Outcome component_counts() {
  const auto start = Clock::now();
  const SymmetrySpec s01({{0, 1}});
  const SymmetrySpec s12({{1, 2}});
  const int c1 = component_count(IndexGroup{3, 2, s01});
  const int c2 = component_count(IndexGroup{4, 2, s01});
  const int c3 = component_count(IndexGroup{3, 3, s12});
  const double t = seconds_since(start);
  std::ostringstream os;
  os << c1 << "/" << c2 << "/" << c3 << " (expected 6/10/18) in " << fmt(t) << " s";
  return {c1 == 6 && c2 == 10 && c3 == 18 && t < 1.0, os.str()};
}

Outcome data_volume() {
  const std::vector<bench::SuiteEntry> extras = bench::dim4_fixtures();
  const DataCount want[] = {{42, 0}, {19, 0}};
  bool ok = extras.size() == 2;
  std::ostringstream os;
  for (std::size_t k = 0; ok && k < extras.size(); ++k) {
    const DataCount fast = count_data(extras[k].statement);
    const DataCount slow = testing::brute_force_count(extras[k].statement);
    ok = ok && fast == want[k] && slow == want[k];
    os << (k ? ", " : "") << extras[k].name << " " << fast.elements << "/" << fast.doubles
       << " (brute force " << slow.elements << "/" << slow.doubles << ")";
  }
  return {ok, os.str()};
}

Outcome tuning_table() {
  const std::pair<int, int> table[] = {{1, 256}, {3, 64}, {4, 64}, {12, 16}, {16, 32}, {9, 32}};
  bool ok = true;
  std::ostringstream os;
  for (const auto& [p, bx] : table) {
    const int got = blocksize_x_for(p);
    ok = ok && got == bx;
    os << p << "->" << got << " ";
  }
  return {ok, os.str()};
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  double worst = 0.0;
  bool bitwise = true;
  bool known = true;
  const std::vector<bench::SuiteEntry> suite = bench::builtin_suite();
  for (const bench::SuiteEntry& e : suite) {
    const FieldStore input = bench::random_fields(e.statement.fields, 64, bench::kDefaultSeed);
    FieldStore whole = input;
    FieldStore per = input;
    FieldStore oracle = input;
    eval(e.statement, whole, EvalMode::kWholeTensor);
    eval(e.statement, per, EvalMode::kPerComponent);
    known = known && testing::run_oracle(e.name, oracle);
    worst = std::max(worst, testing::max_relative_error(whole, oracle));
    bitwise = bitwise && testing::bitwise_equal(whole, per);
  }
  const double t = seconds_since(start);
  std::ostringstream os;
  os << suite.size() << " statements, max relative error " << fmt(worst)
     << ", modes bitwise " << (bitwise ? "identical" : "DIFFERENT") << ", " << fmt(t) << " s";
  return {suite.size() == 14 && known && worst <= 1e-13 && bitwise && t < 30.0, os.str()};
}

bool contains_sum(const Expr& e) {
  if (std::holds_alternative<SumNode>(e.node)) return true;
  if (const auto* b = std::get_if<Binary>(&e.node)) return contains_sum(*b->lhs) || contains_sum(*b->rhs);
  if (const auto* u = std::get_if<Unary>(&e.node)) return contains_sum(*u->operand);
  return false;
}

Outcome sum_expansion() {
  std::vector<bench::SuiteEntry> entries = bench::builtin_suite();
  for (bench::SuiteEntry& e : bench::dim4_fixtures()) entries.push_back(std::move(e));
  int checked = 0;
  bool ok = true;
  for (const bench::SuiteEntry& e : entries) {
    if (!contains_sum(*e.statement.stmt.rhs)) continue;
    ++checked;
    const FieldStore input = bench::random_fields(e.statement.fields, 64, bench::kDefaultSeed);
    FieldStore native = input;
    FieldStore expanded = input;
    ValidatedStatement unrolled = e.statement;
    unrolled.stmt.rhs = expand_all_sums(e.statement.stmt.rhs);
    ok = ok && !contains_sum(*unrolled.stmt.rhs);
    eval(e.statement, native, EvalMode::kWholeTensor);
    eval(unrolled, expanded, EvalMode::kWholeTensor);
    ok = ok && testing::bitwise_equal(native, expanded);
  }
  return {ok && checked == 6, std::to_string(checked) + " contraction statements bitwise equal"};
}

// All subsets of the position pairs of a rank-r group.
std::vector<SymmetrySpec> all_symmetries(int rank) {
  std::vector<Inequality> pairs;
  for (int p = 0; p < rank; ++p)
    for (int q = p + 1; q < rank; ++q) pairs.push_back({p, q});
  std::vector<SymmetrySpec> out;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<Inequality> chosen;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask & (1u << k)) chosen.push_back(pairs[k]);
    out.emplace_back(std::move(chosen));
  }
  return out;
}

Outcome iteration_law() {
  const auto start = Clock::now();
  long cases = 0;
  bool ok = true;
  for (int dim = 1; dim <= 4; ++dim) {
    for (int rank = 1; rank <= 4; ++rank) {
      for (const SymmetrySpec& sym : all_symmetries(rank)) {
        ++cases;
        // Canonical representatives of the plain odometer, slot 0 fastest.
        std::vector<MultiIndex> expected;
        MultiIndex idx(static_cast<std::size_t>(rank), 0);
        for (;;) {
          if (canonicalize(sym, idx) == idx) expected.push_back(idx);
          std::size_t q = 0;
          while (q < idx.size() && ++idx[q] == dim) idx[q++] = 0;
          if (q == idx.size()) break;
        }
        const std::vector<int> dims(static_cast<std::size_t>(rank), dim);
        const std::vector<MultiIndex> got = iterate(dims, sym);
        const GroupLayout layout(IndexGroup{dim, rank, sym});
        bool slots = static_cast<int>(got.size()) == layout.component_count();
        for (std::size_t k = 0; slots && k < got.size(); ++k) {
          slots = layout.slot_index(got[k]) == static_cast<int>(k);
        }
        ok = ok && got == expected && slots;
      }
    }
  }
  const double t = seconds_since(start);
  return {ok && t < 10.0, std::to_string(cases) + " (dim, rank, symmetry) cases in " + fmt(t) + " s"};
}

Outcome goldens() {
  const std::filesystem::path data = TLOOPS_DATA_DIR;
  const std::filesystem::path golden = TLOOPS_GOLDEN_DIR;
  int files = 0;
  std::vector<std::string> bad;
  try {
    for (const auto& [rel, content] : testing::expected_goldens(data)) {
      ++files;
      std::error_code ec;
      if (!std::filesystem::exists(golden / rel, ec) ||
          testing::read_file(golden / rel) != content) {
        bad.push_back(rel.string());
      }
    }
    for (const testing::Anchor& a : testing::kernel_anchors()) {
      if (testing::read_file(golden / a.file).find(a.fragment) == std::string::npos) {
        bad.push_back(a.file.string() + " lacks '" + a.fragment + "'");
      }
    }
  } catch (const std::exception& e) {
    bad.push_back(e.what());
  }
  std::string detail = std::to_string(files) + " golden files";
  for (const std::string& b : bad) detail += "; mismatch: " + b;
  return {bad.empty() && files > 0, detail};
}

// Clock returning start/stop pairs whose differences are exactly `samples`.
bench::Clock synthetic_clock(const std::vector<double>& samples) {
  auto stamps = std::make_shared<std::vector<double>>();
  for (double s : samples) {
    stamps->push_back(0.0);
    stamps->push_back(s);
  }
  auto next = std::make_shared<std::size_t>(0);
  return [stamps, next] { return (*stamps)[(*next)++ % stamps->size()]; };
}

Outcome bw_arithmetic() {
  std::vector<bench::SuiteEntry> entries = bench::builtin_suite();
  for (bench::SuiteEntry& e : bench::dim4_fixtures()) entries.push_back(std::move(e));
  double worst = 0.0;
  const double timings[] = {1e-3, 3.7e-6, 0.25};
  for (const bench::SuiteEntry& e : entries) {
    for (double t : timings) {
      const std::size_t n = 32;
      FieldStore env = bench::random_fields(e.statement.fields, n);
      bench::RunOptions opts;
      opts.clock = synthetic_clock(std::vector<double>(bench::kDefaultReps, t));
      const bench::BenchResult r = bench::run(e, env, EvalMode::kWholeTensor, opts);
      const DataCount c = count_data(e.statement);
      const double expect = 8.0 * (static_cast<double>(c.elements) * static_cast<double>(n) +
                                   static_cast<double>(c.doubles)) / t;
      worst = std::max(worst, testing::relative_error(r.bw_eff * 1e9, expect));
    }
  }
  const double example = bench::bw_eff_gbps({42, 0}, 1000, 1e-3);
  worst = std::max(worst, testing::relative_error(example, 0.336));
  return {worst <= 1e-12, "max relative deviation " + fmt(worst)};
}

Outcome bench_protocol() {
  std::vector<double> samples;
  samples.push_back(50.0);  // discarded warm-up
  for (int k = 0; k < 20; ++k) samples.push_back(0.001 * ((k * 7) % 20 + 1));
  std::vector<double> tail(samples.begin() + 1, samples.end());
  std::sort(tail.begin(), tail.end());
  const double expect = (tail[9] + tail[10]) / 2.0;
  const bench::SuiteEntry entry = bench::builtin_suite().front();
  FieldStore env = bench::random_fields(entry.statement.fields, 32);
  bench::RunOptions opts;
  opts.clock = synthetic_clock(samples);
  const bench::BenchResult r = bench::run(entry, env, EvalMode::kWholeTensor, opts);
  const bool ok = r.t == expect;
  return {ok, "t = " + fmt(r.t) + " s, median of runs 2-21 = " + fmt(expect) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"component-counts", component_counts},
      {"data-volume", data_volume},
      {"tuning-table", tuning_table},
      {"oracle-equivalence", oracle_equivalence},
      {"sum-expansion", sum_expansion},
      {"iteration-law", iteration_law},
      {"codegen-goldens", goldens},
      {"bw-eff-arithmetic", bw_arithmetic},
      {"bench-protocol", bench_protocol},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
