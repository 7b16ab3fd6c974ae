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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tloops/field.hpp"
#include "tloops/symmetry.hpp"

namespace tloops {

struct SourceLoc {
  int line = 0;
  int column = 0;

  bool operator==(const SourceLoc&) const = default;
};

/// A symbolic loop index. Identity is the name; the dimension is fixed when
/// the index is declared.
struct IndexVar {
  std::string name;
  int dim = 3;

  bool operator==(const IndexVar&) const = default;
  bool operator<(const IndexVar& o) const { return name < o.name; }
};

/// Use of an index at one slot: a fixed integer or a variable plus offset.
struct IndexTerm {
  struct Fixed {
    int value = 0;
    bool operator==(const Fixed&) const = default;
  };
  struct Var {
    IndexVar var;
    int offset = 0;
    bool operator==(const Var&) const = default;
  };

  std::variant<Fixed, Var> term;

  static IndexTerm fixed(int value) { return {Fixed{value}}; }
  static IndexTerm variable(IndexVar v, int offset = 0) {
    return {Var{std::move(v), offset}};
  }

  bool is_fixed() const { return std::holds_alternative<Fixed>(term); }
  const Var* as_var() const { return std::get_if<Var>(&term); }

  bool operator==(const IndexTerm&) const = default;
};

/// One indexed tensor. `declared_sym` is only meaningful on the left-hand
/// side; on the right it is accepted and ignored.
struct TensorLeaf {
  std::string field;
  std::vector<IndexTerm> outer;
  std::vector<IndexTerm> inner;
  std::optional<SymmetrySpec> declared_sym;

  bool operator==(const TensorLeaf&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinaryOp { kAdd, kSub, kMul, kDiv };
enum class UnaryOp { kNeg, kSqrt };

struct ScalarConst {
  double value = 0.0;
  std::string name;  // empty for literals

  bool operator==(const ScalarConst&) const = default;
};

struct ScalarFieldRef {
  std::string name;
  bool operator==(const ScalarFieldRef&) const = default;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Unary {
  UnaryOp op;
  ExprPtr operand;
};

struct SumNode {
  IndexVar var;
  ExprPtr body;
};

/// Immutable expression tree node.
struct Expr {
  std::variant<TensorLeaf, ScalarConst, ScalarFieldRef, Binary, Unary, SumNode>
      node;
};

ExprPtr make_leaf(TensorLeaf leaf);
ExprPtr make_const(double value, std::string name = {});
ExprPtr make_scalar_field(std::string name);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_sum(IndexVar var, ExprPtr body);

// Deep structural equality.
bool structurally_equal(const Expr& a, const Expr& b);

enum class AssignOp { kSet, kAdd, kSub, kMul, kDiv };

std::string_view assign_op_token(AssignOp op);  // "=", "+=", ...
std::string_view assign_op_name(AssignOp op);   // "set", "add", ...

struct Statement {
  TensorLeaf lhs;
  AssignOp op = AssignOp::kSet;
  ExprPtr rhs;
  SourceLoc loc;
};

bool structurally_equal(const Statement& a, const Statement& b);

/// What a name refers to in a program.
struct TensorDecl {
  TensorShape shape;
  bool operator==(const TensorDecl&) const = default;
};
struct ScalarFieldDecl {
  bool operator==(const ScalarFieldDecl&) const = default;
};
struct ConstDecl {
  double value = 0.0;
  bool operator==(const ConstDecl&) const = default;
};
using FieldDecl = std::variant<TensorDecl, ScalarFieldDecl, ConstDecl>;

using Declarations = std::map<std::string, FieldDecl>;

}  // namespace tloops
