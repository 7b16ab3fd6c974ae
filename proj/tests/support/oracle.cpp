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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "tloops/tldf.hpp"

namespace tloops::testing {

namespace {

using Idx = std::vector<int>;

double rd(const FieldStore& env, const char* name, const Idx& outer, std::size_t x,
          const Idx& inner = {}) {
  return env.tensor(name).component(outer, inner)[x];
}

double& wr(FieldStore& env, const char* name, const Idx& outer, std::size_t x) {
  return env.tensor(name).component(outer)[x];
}

double sc(const FieldStore& env, const char* name, std::size_t x) {
  return env.scalar(name).values[x];
}

std::size_t grid(const FieldStore& env, const char* lhs) {
  return env.tensor(lhs).gridsize();
}

void assign1(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int i = 0; i < 3; ++i)
    for (std::size_t x = 0; x < n; ++x) wr(e, "A1", {i}, x) = rd(e, "B1", {i}, x);
}

void assign2(FieldStore& e) {
  const std::size_t n = grid(e, "B2");
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      for (std::size_t x = 0; x < n; ++x) wr(e, "A2", {i, j}, x) = rd(e, "B2", {i, j}, x);
}

void assign3(FieldStore& e) {
  const std::size_t n = grid(e, "B3");
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        for (std::size_t x = 0; x < n; ++x)
          wr(e, "A3", {i, j, k}, x) = rd(e, "B3", {i, j, k}, x);
}

void add1(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int i = 0; i < 3; ++i)
    for (std::size_t x = 0; x < n; ++x)
      wr(e, "A1", {i}, x) = rd(e, "B1", {i}, x) + rd(e, "C1", {i}, x);
}

void add2(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int i = 0; i < 3; ++i)
    for (std::size_t x = 0; x < n; ++x)
      wr(e, "A1", {i}, x) = rd(e, "B1", {i}, x) + rd(e, "C1", {i}, x) + rd(e, "D1", {i}, x);
}

void add3(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int i = 0; i < 3; ++i)
    for (std::size_t x = 0; x < n; ++x)
      wr(e, "A1", {i}, x) = rd(e, "B1", {i}, x) + rd(e, "C1", {i}, x) +
                            rd(e, "D1", {i}, x) + rd(e, "E1", {i}, x);
}

void outer1(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      for (std::size_t x = 0; x < n; ++x)
        wr(e, "A2", {i, j}, x) = rd(e, "B1", {i}, x) * rd(e, "C1", {j}, x);
}

void outer2(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        for (std::size_t x = 0; x < n; ++x)
          wr(e, "A3", {i, j, k}, x) =
              rd(e, "B1", {i}, x) * rd(e, "C1", {j}, x) * rd(e, "D1", {k}, x);
}

void outer3(FieldStore& e) {
  const std::size_t n = grid(e, "B1");
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          for (std::size_t x = 0; x < n; ++x)
            wr(e, "A4", {i, j, k, l}, x) = rd(e, "B1", {i}, x) * rd(e, "C1", {j}, x) *
                                           rd(e, "D1", {k}, x) * rd(e, "E1", {l}, x);
}

void contract1(FieldStore& e) {
  const std::size_t n = grid(e, "B2");
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          for (std::size_t x = 0; x < n; ++x) {
            double sum = 0;
            for (int m = 0; m < 3; ++m) sum += rd(e, "B2", {i, m}, x) * rd(e, "E4", {m, j, k, l}, x);
            wr(e, "A4", {i, j, k, l}, x) = sum;
          }
}

void contract2(FieldStore& e) {
  const std::size_t n = grid(e, "B2");
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          for (std::size_t x = 0; x < n; ++x) {
            double sum = 0;
            for (int m = 0; m < 3; ++m)
              for (int nn = 0; nn < 3; ++nn)
                sum += rd(e, "C2", {j, nn}, x) * rd(e, "B2", {i, m}, x) *
                       rd(e, "E4", {m, nn, k, l}, x);
            wr(e, "A4", {i, j, k, l}, x) = sum;
          }
}

void contract3(FieldStore& e) {
  const std::size_t n = grid(e, "B2");
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          for (std::size_t x = 0; x < n; ++x) {
            double sum = 0;
            for (int m = 0; m < 3; ++m)
              for (int nn = 0; nn < 3; ++nn)
                for (int o = 0; o < 3; ++o)
                  sum += rd(e, "D2", {k, o}, x) * rd(e, "C2", {j, nn}, x) *
                         rd(e, "B2", {i, m}, x) * rd(e, "E4", {m, nn, o, l}, x);
            wr(e, "A4", {i, j, k, l}, x) = sum;
          }
}

void kij(FieldStore& e) {
  const std::size_t n = grid(e, "g");
  for (int j = 0; j < 3; ++j)
    for (int i = j; i < 3; ++i)
      for (std::size_t x = 0; x < n; ++x)
        wr(e, "K", {i, j}, x) = 2.0 * sc(e, "alpha", x) * rd(e, "g", {i, j}, x) +
                                rd(e, "beta", {i}, x) * rd(e, "beta", {j}, x);
}

void christoffel(FieldStore& e) {
  const std::size_t n = grid(e, "Invg");
  for (int k = 0; k < 3; ++k)
    for (int j = k; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        for (std::size_t x = 0; x < n; ++x) {
          double sum = 0;
          for (int l = 0; l < 3; ++l) {
            sum += rd(e, "Invg", {i, l}, x) *
                   (rd(e, "dg", {j, l}, x, {k}) + rd(e, "dg", {l, k}, x, {j}) -
                    rd(e, "dg", {j, k}, x, {l}));
          }
          wr(e, "Gamma", {i, j, k}, x) = 0.5 * sum;
        }
}

void contract_sym(FieldStore& e) {
  const std::size_t n = grid(e, "A");
  for (int b = 0; b < 4; ++b)
    for (int a = b; a < 4; ++a)
      for (std::size_t x = 0; x < n; ++x) {
        double sum = 0;
        for (int c = 0; c < 4; ++c) sum += rd(e, "A", {a, c}, x) * rd(e, "B", {c, b}, x);
        wr(e, "C", {a, b}, x) = sum;
      }
}

void fixed_offset(FieldStore& e) {
  const std::size_t n = grid(e, "E");
  for (int i = 0; i < 3; ++i)
    for (std::size_t x = 0; x < n; ++x) {
      double sum = 0;
      for (int c = 0; c < 4; ++c) sum += rd(e, "E", {i + 1, c}, x) * rd(e, "F", {c, 0}, x);
      wr(e, "D", {i, 0}, x) = sum;
    }
}

void dtg(FieldStore& e) {
  const std::size_t n = grid(e, "K");
  for (int j = 0; j < 3; ++j)
    for (int i = j; i < 3; ++i)
      for (std::size_t x = 0; x < n; ++x)
        wr(e, "dtg", {i, j}, x) = -2.0 * sc(e, "alpha", x) * rd(e, "K", {i, j}, x) +
                                  rd(e, "db", {i, j}, x) + rd(e, "db", {j, i}, x);
}

const std::map<std::string, std::function<void(FieldStore&)>>& table() {
  static const std::map<std::string, std::function<void(FieldStore&)>> t = {
      {"assign1", assign1},       {"assign2", assign2},     {"assign3", assign3},
      {"add1", add1},             {"add2", add2},           {"add3", add3},
      {"outer1", outer1},         {"outer2", outer2},       {"outer3", outer3},
      {"contract1", contract1},   {"contract2", contract2}, {"contract3", contract3},
      {"kij", kij},               {"christoffel", christoffel},
      {"contract_sym", contract_sym}, {"fixed_offset", fixed_offset}, {"dtg", dtg}};
  return t;
}

// Definitional counting helpers.
using Bindings = std::map<std::string, int>;

void collect(const Expr& e, std::vector<const TensorLeaf*>& leaves,
             std::set<std::string>& scalars, std::vector<IndexVar>& sums,
             long long& constants) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TensorLeaf>) {
          leaves.push_back(&n);
        } else if constexpr (std::is_same_v<T, ScalarFieldRef>) {
          scalars.insert(n.name);
        } else if constexpr (std::is_same_v<T, ScalarConst>) {
          ++constants;
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect(*n.lhs, leaves, scalars, sums, constants);
          collect(*n.rhs, leaves, scalars, sums, constants);
        } else if constexpr (std::is_same_v<T, Unary>) {
          collect(*n.operand, leaves, scalars, sums, constants);
        } else {
          if (std::none_of(sums.begin(), sums.end(),
                           [&](const IndexVar& v) { return v.name == n.var.name; })) {
            sums.push_back(n.var);
          }
          collect(*n.body, leaves, scalars, sums, constants);
        }
      },
      e.node);
}

Idx resolve(const std::vector<IndexTerm>& terms, const Bindings& b) {
  Idx out;
  for (const IndexTerm& t : terms) {
    if (const auto* v = t.as_var()) {
      out.push_back(b.at(v->var.name) + v->offset);
    } else {
      out.push_back(std::get<IndexTerm::Fixed>(t.term).value);
    }
  }
  return out;
}

}  // namespace

bool run_oracle(const std::string& name, FieldStore& env) {
  auto it = table().find(name);
  if (it == table().end()) return false;
  it->second(env);
  return true;
}

const std::vector<std::string>& oracle_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

const char* dtg_source() {
  return "tensor dtg dim 3 rank 2 sym(0,1);\n"
         "tensor K dim 3 rank 2 sym(0,1);\n"
         "tensor db dim 3 rank 2;\n"
         "field alpha;\n"
         "dtg(sym<0,1>, i, j) = -2*alpha*K(i,j) + db(i,j) + db(j,i);\n";
}

DataCount brute_force_count(const ValidatedStatement& s) {
  std::vector<const TensorLeaf*> leaves{&s.stmt.lhs};
  std::set<std::string> scalars;
  std::vector<IndexVar> sums;
  DataCount count;
  collect(*s.stmt.rhs, leaves, scalars, sums, count.doubles);

  std::vector<int> sum_dims;
  for (const IndexVar& v : sums) sum_dims.push_back(v.dim);
  std::set<std::pair<std::string, int>> touched;
  for (const MultiIndex& lhs : iterate(s.loops.dims, s.loops.sym)) {
    Bindings b;
    for (std::size_t p = 0; p < lhs.size(); ++p) b[s.loops.vars[p].name] = lhs[p];
    // Plain odometer over all Sum variables, no symmetry.
    MultiIndex sv(sum_dims.size(), 0);
    for (;;) {
      for (std::size_t q = 0; q < sv.size(); ++q) b[sums[q].name] = sv[q];
      for (const TensorLeaf* leaf : leaves) {
        const ShapeLayout layout(s.shape_of(leaf->field));
        touched.emplace(leaf->field,
                        layout.slot(resolve(leaf->outer, b), resolve(leaf->inner, b)));
      }
      std::size_t q = 0;
      while (q < sv.size() && ++sv[q] == sum_dims[q]) sv[q++] = 0;
      if (q == sv.size()) break;
    }
  }
  count.elements = static_cast<long long>(touched.size() + scalars.size());
  return count;
}

double relative_error(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) / scale;
}

double max_relative_error(const FieldStore& a, const FieldStore& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  auto fold = [&](std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
      worst = kInf;
      return;
    }
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, relative_error(x[k], y[k]));
  };
  for (const Field& f : a.fields()) {
    const Field* g = b.find(field_name(f));
    if (g == nullptr || g->index() != f.index()) return kInf;
    if (const auto* t = std::get_if<TensorField>(&f)) {
      const auto& u = std::get<TensorField>(*g);
      if (t->component_count() != u.component_count()) return kInf;
      for (int s = 0; s < t->component_count(); ++s) fold(t->slot(s), u.slot(s));
    } else if (const auto* sf = std::get_if<ScalarField>(&f)) {
      fold(sf->values, std::get<ScalarField>(*g).values);
    }
  }
  return worst;
}

bool bitwise_equal(const FieldStore& a, const FieldStore& b) {
  return encode_tldf(a) == encode_tldf(b);
}

}  // namespace tloops::testing
