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

#include "tloops/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <variant>

#include "tloops/error.hpp"

namespace tloops::bench {

namespace {

constexpr std::string_view kSuite = R"(tensor A1 dim 3 rank 1;
tensor A2 dim 3 rank 2;
tensor A3 dim 3 rank 3;
tensor A4 dim 3 rank 4;
tensor B1 dim 3 rank 1;
tensor C1 dim 3 rank 1;
tensor D1 dim 3 rank 1;
tensor E1 dim 3 rank 1;
tensor B2 dim 3 rank 2;
tensor C2 dim 3 rank 2;
tensor D2 dim 3 rank 2;
tensor B3 dim 3 rank 3;
tensor E4 dim 3 rank 4;
field alpha;
tensor beta dim 3 rank 1;
tensor g dim 3 rank 2 sym(0,1);
tensor K dim 3 rank 2 sym(0,1);
tensor Invg dim 3 rank 2 sym(0,1);
tensor dg dim 3 rank 2 sym(0,1) inner rank 1;
tensor Gamma dim 3 rank 3 sym(1,2);
A1(i) = B1(i);
A2(i,j) = B2(i,j);
A3(i,j,k) = B3(i,j,k);
A1(i) = B1(i) + C1(i);
A1(i) = B1(i) + C1(i) + D1(i);
A1(i) = B1(i) + C1(i) + D1(i) + E1(i);
A2(i,j) = B1(i)*C1(j);
A3(i,j,k) = B1(i)*C1(j)*D1(k);
A4(i,j,k,l) = B1(i)*C1(j)*D1(k)*E1(l);
A4(i,j,k,l) = Sum(m, B2(i,m)*E4(m,j,k,l));
A4(i,j,k,l) = Sum(m, Sum(n, C2(j,n)*B2(i,m)*E4(m,n,k,l)));
A4(i,j,k,l) = Sum(m, Sum(n, Sum(o, D2(k,o)*C2(j,n)*B2(i,m)*E4(m,n,o,l))));
K(sym<0,1>, i, j) = 2*alpha*g(i,j) + beta(i)*beta(j);
Gamma(sym<1,2>, i, j, k) = 0.5*Sum(l, Invg(i,l)*(dg(j,l)(k) + dg(l,k)(j) - dg(j,k)(l)));
)";

constexpr const char* kSuiteNames[] = {
    "assign1", "assign2", "assign3", "add1", "add2", "add3", "outer1",
    "outer2", "outer3", "contract1", "contract2", "contract3", "kij",
    "christoffel"};

constexpr std::string_view kSymContraction = R"(tensor A dim 4 rank 2;
tensor B dim 4 rank 2;
tensor C dim 4 rank 2 sym(0,1);
C(sym<0,1>, a, b) = Sum(c, A(a,c)*B(c,b));
)";

constexpr std::string_view kFixedOffset = R"(tensor D dim 4 rank 2 sym(0,1);
tensor E dim 4 rank 2;
tensor F dim 4 rank 2;
D(sym<0,1>, i, 0) = Sum(c, E(i+1,c)*F(c,0));
)";

std::vector<SuiteEntry> named(std::string_view source, std::string_view file,
                              std::initializer_list<const char*> names) {
  ValidatedProgram p = compile_program(source, file);
  std::vector<SuiteEntry> out;
  auto it = names.begin();
  for (ValidatedStatement& s : p.statements) out.push_back({*it++, std::move(s)});
  return out;
}

void fill_tensor(TensorField& t, UniformOpen01& rng) {
  for (int s = 0; s < t.component_count(); ++s) {
    for (double& v : t.slot(s)) v = rng();
  }
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string_view builtin_suite_source() { return kSuite; }

std::vector<SuiteEntry> builtin_suite() {
  ValidatedProgram p = compile_program(kSuite, "<suite>");
  std::vector<SuiteEntry> out;
  std::size_t k = 0;
  for (ValidatedStatement& s : p.statements) out.push_back({kSuiteNames[k++], std::move(s)});
  return out;
}

std::vector<SuiteEntry> dim4_fixtures() {
  std::vector<SuiteEntry> out = named(kSymContraction, "<contract_sym>", {"contract_sym"});
  for (SuiteEntry& e : named(kFixedOffset, "<fixed_offset>", {"fixed_offset"})) {
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<SuiteEntry> program_entries(const ValidatedProgram& program) {
  std::vector<SuiteEntry> out;
  for (const ValidatedStatement& s : program.statements) {
    out.push_back({"s" + std::to_string(out.size() + 1), s});
  }
  return out;
}

double UniformOpen01::operator()() {
  for (;;) {
    const double v = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (v > 0.0) return v;
  }
}

FieldStore random_fields(const Declarations& decls, std::size_t n,
                         std::uint64_t seed) {
  UniformOpen01 rng(seed);
  FieldStore store;
  for (const auto& [name, decl] : decls) {
    if (const auto* t = std::get_if<TensorDecl>(&decl)) {
      TensorField f(name, t->shape, n);
      fill_tensor(f, rng);
      store.put(std::move(f));
    } else if (std::holds_alternative<ScalarFieldDecl>(decl)) {
      ScalarField f{name, std::vector<double>(n)};
      for (double& v : f.values) v = rng();
      store.put(std::move(f));
    } else {
      store.put(Constant{name, std::get<ConstDecl>(decl).value});
    }
  }
  return store;
}

FieldStore random_fields(const std::vector<SuiteEntry>& entries, std::size_t n,
                         std::uint64_t seed) {
  Declarations merged;
  for (const SuiteEntry& e : entries) {
    for (const auto& [name, decl] : e.statement.fields) {
      auto [it, inserted] = merged.emplace(name, decl);
      if (!inserted && !(it->second == decl)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "conflicting declarations for '" + name + "'");
      }
    }
  }
  return random_fields(merged, n, seed);
}

Clock steady_clock() {
  return [] {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
  };
}

double bw_eff_gbps(const DataCount& count, std::size_t n, double t) {
  const double bytes =
      8.0 * (static_cast<double>(count.elements) * static_cast<double>(n) +
             static_cast<double>(count.doubles));
  return bytes / t / 1e9;
}

double median_after_warmup(std::vector<double> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two samples");
  }
  samples.erase(samples.begin());
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size();
  return m % 2 == 1 ? samples[m / 2] : (samples[m / 2 - 1] + samples[m / 2]) / 2.0;
}

BenchResult run(const SuiteEntry& entry, FieldStore& env, EvalMode mode,
                const RunOptions& opts) {
  if (opts.reps < 2) throw Error(ErrorCode::kInvalidArgument, "reps must be >= 2");
  const Clock clock = opts.clock ? opts.clock : steady_clock();
  EvalOptions eo;
  eo.threads = opts.threads;
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(opts.reps));
  for (int r = 0; r < opts.reps; ++r) {
    const double start = clock();
    eval(entry.statement, env, mode, eo);
    samples.push_back(clock() - start);
  }
  BenchResult out;
  out.name = entry.name;
  out.mode = mode;
  out.n = env.tensor(entry.statement.stmt.lhs.field).gridsize();
  out.t = median_after_warmup(std::move(samples));
  out.count = count_data(entry.statement);
  out.bw_eff = bw_eff_gbps(out.count, out.n, out.t);
  return out;
}

std::vector<std::size_t> default_grids() {
  std::vector<std::size_t> out;
  for (std::size_t n = 32; n <= 65536; n *= 2) out.push_back(n);
  return out;
}

void check_grids(const std::vector<std::size_t>& grids) {
  if (grids.empty()) throw Error(ErrorCode::kInvalidArgument, "empty grid list");
  for (std::size_t k = 0; k < grids.size(); ++k) {
    if (grids[k] == 0 || grids[k] % 32 != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "gridsize " + std::to_string(grids[k]) + " is not a positive multiple of 32");
    }
    if (k > 0 && grids[k] <= grids[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "grid list must be ascending");
    }
  }
}

std::vector<BenchResult> sweep(const std::vector<SuiteEntry>& entries,
                               const SweepOptions& opts) {
  check_grids(opts.grids);
  std::vector<BenchResult> out;
  for (const SuiteEntry& e : entries) {
    for (std::size_t n : opts.grids) {
      FieldStore env = random_fields(e.statement.fields, n, opts.seed);
      for (EvalMode mode : opts.modes) out.push_back(run(e, env, mode, opts.run));
    }
  }
  return out;
}

std::string csv_row(const BenchResult& r) {
  std::ostringstream os;
  os << r.name << "," << eval_mode_name(r.mode) << "," << r.n << "," << number(r.t) << ","
     << number(r.bw_eff) << "," << r.count.elements << "," << r.count.doubles;
  return os.str();
}

std::string to_csv(const std::vector<BenchResult>& results) {
  std::string out(kCsvHeader);
  out += "\n";
  for (const BenchResult& r : results) out += csv_row(r) + "\n";
  return out;
}

}  // namespace tloops::bench
