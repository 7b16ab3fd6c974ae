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

#include <set>
#include <string>
#include <vector>

#include "tloops/expr.hpp"

namespace tloops {

using IndexSet = std::set<IndexVar>;

/// Free indices of an expression. Add/Sub require equal operand sets; Sum
/// removes its variable, which must be free in the body.
IndexSet free_indices(const Expr& e);

/// Variables the left-hand side loops over, in slot order (outer group
/// first), with the chain-form symmetry that bounds the loop nest.
struct LoopSpace {
  std::vector<IndexVar> vars;
  std::vector<int> dims;
  SymmetrySpec sym;
};

/// A statement that passed every check, with the declarations it uses.
struct ValidatedStatement {
  Statement stmt;
  Declarations fields;
  LoopSpace loops;

  const TensorShape& shape_of(const std::string& name) const;
  const TensorShape& lhs_shape() const { return shape_of(stmt.lhs.field); }
};

/// Checks, in order: unique lhs variables; lhs/rhs free sets agree (or the
/// rhs is scalar-valued); declared lhs symmetry matches the field on the
/// variable-bound slots; every index term fits its field's dimension;
/// divisors, sqrt arguments and *=, /= right-hand sides are scalar-valued.
/// Throws Error with a code identifying the failed check.
ValidatedStatement validate_statement(const Statement& s,
                                      const Declarations& decls);

/// Deterministic textual identity of a statement, used to deduplicate
/// generated kernels. Field names and index names are part of it.
std::string signature(const ValidatedStatement& s);

struct DataCount {
  long long elements = 0;  // N_e: distinct component arrays touched
  long long doubles = 0;   // N_d: bare scalar constants

  bool operator==(const DataCount&) const = default;
};

/// Data volume of one execution of the statement.
DataCount count_data(const ValidatedStatement& s);

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

}  // namespace tloops
