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

#include "tloops/expr.hpp"

namespace tloops {

ExprPtr make_leaf(TensorLeaf leaf) {
  return std::make_shared<const Expr>(Expr{std::move(leaf)});
}

ExprPtr make_const(double value, std::string name) {
  return std::make_shared<const Expr>(Expr{ScalarConst{value, std::move(name)}});
}

ExprPtr make_scalar_field(std::string name) {
  return std::make_shared<const Expr>(Expr{ScalarFieldRef{std::move(name)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(
      Expr{Binary{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
  return std::make_shared<const Expr>(Expr{Unary{op, std::move(operand)}});
}

ExprPtr make_sum(IndexVar var, ExprPtr body) {
  return std::make_shared<const Expr>(Expr{SumNode{std::move(var), std::move(body)}});
}

namespace {

struct EqualVisitor {
  const Expr& other;

  bool operator()(const TensorLeaf& a) const {
    const auto* b = std::get_if<TensorLeaf>(&other.node);
    return b != nullptr && a == *b;
  }
  bool operator()(const ScalarConst& a) const {
    const auto* b = std::get_if<ScalarConst>(&other.node);
    return b != nullptr && a == *b;
  }
  bool operator()(const ScalarFieldRef& a) const {
    const auto* b = std::get_if<ScalarFieldRef>(&other.node);
    return b != nullptr && a == *b;
  }
  bool operator()(const Binary& a) const {
    const auto* b = std::get_if<Binary>(&other.node);
    return b != nullptr && a.op == b->op && structurally_equal(*a.lhs, *b->lhs) &&
           structurally_equal(*a.rhs, *b->rhs);
  }
  bool operator()(const Unary& a) const {
    const auto* b = std::get_if<Unary>(&other.node);
    return b != nullptr && a.op == b->op &&
           structurally_equal(*a.operand, *b->operand);
  }
  bool operator()(const SumNode& a) const {
    const auto* b = std::get_if<SumNode>(&other.node);
    return b != nullptr && a.var == b->var && structurally_equal(*a.body, *b->body);
  }
};

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  return std::visit(EqualVisitor{b}, a.node);
}

bool structurally_equal(const Statement& a, const Statement& b) {
  return a.lhs == b.lhs && a.op == b.op && structurally_equal(*a.rhs, *b.rhs);
}

std::string_view assign_op_token(AssignOp op) {
  switch (op) {
    case AssignOp::kSet: return "=";
    case AssignOp::kAdd: return "+=";
    case AssignOp::kSub: return "-=";
    case AssignOp::kMul: return "*=";
    case AssignOp::kDiv: return "/=";
  }
  return "=";
}

std::string_view assign_op_name(AssignOp op) {
  switch (op) {
    case AssignOp::kSet: return "set";
    case AssignOp::kAdd: return "add";
    case AssignOp::kSub: return "sub";
    case AssignOp::kMul: return "mul";
    case AssignOp::kDiv: return "div";
  }
  return "set";
}

}  // namespace tloops
