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

#include "tloops/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "tloops/error.hpp"

namespace tloops {
namespace {

std::string set_text(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  for (const IndexVar& v : s) {
    if (!first) out += ",";
    out += v.name;
    first = false;
  }
  return out + "}";
}

std::string where(const Statement& s) {
  return "statement at " + std::to_string(s.loc.line) + ":" +
         std::to_string(s.loc.column);
}

void add_vars(const std::vector<IndexTerm>& terms, IndexSet& out) {
  for (const IndexTerm& t : terms) {
    if (const auto* v = t.as_var()) out.insert(v->var);
  }
}

// Calls visit(leaf, enclosing_sum_vars) for every tensor leaf.
void for_each_leaf(
    const Expr& e, std::vector<IndexVar>& sums,
    const std::function<void(const TensorLeaf&, const std::vector<IndexVar>&)>&
        visit) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TensorLeaf>) {
          visit(n, sums);
        } else if constexpr (std::is_same_v<T, Binary>) {
          for_each_leaf(*n.lhs, sums, visit);
          for_each_leaf(*n.rhs, sums, visit);
        } else if constexpr (std::is_same_v<T, Unary>) {
          for_each_leaf(*n.operand, sums, visit);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          sums.push_back(n.var);
          for_each_leaf(*n.body, sums, visit);
          sums.pop_back();
        }
      },
      e.node);
}

template <class F>
void for_each_node(const Expr& e, F&& f) {
  f(e);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>) {
          for_each_node(*n.lhs, f);
          for_each_node(*n.rhs, f);
        } else if constexpr (std::is_same_v<T, Unary>) {
          for_each_node(*n.operand, f);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          for_each_node(*n.body, f);
        }
      },
      e.node);
}

const TensorShape& require_tensor(const Declarations& decls,
                                  const std::string& name) {
  auto it = decls.find(name);
  if (it == decls.end()) {
    throw Error(ErrorCode::kUnknownName, "undeclared tensor '" + name + "'");
  }
  const auto* t = std::get_if<TensorDecl>(&it->second);
  if (t == nullptr) {
    throw Error(ErrorCode::kKindMismatch,
                "'" + name + "' is not a tensor and cannot be indexed");
  }
  return t->shape;
}

void check_term_counts(const TensorLeaf& leaf, const TensorShape& shape) {
  if (static_cast<int>(leaf.outer.size()) != shape.outer_rank ||
      static_cast<int>(leaf.inner.size()) != shape.inner_rank) {
    throw Error(ErrorCode::kShape,
                "'" + leaf.field + "' has rank [" +
                    std::to_string(shape.outer_rank) + "," +
                    std::to_string(shape.inner_rank) + "] but is indexed with [" +
                    std::to_string(leaf.outer.size()) + "," +
                    std::to_string(leaf.inner.size()) + "] terms");
  }
}

void check_bounds(const TensorLeaf& leaf, const TensorShape& shape) {
  auto check = [&](const IndexTerm& t) {
    if (const auto* v = t.as_var()) {
      if (v->offset < 0 || v->offset + v->var.dim > shape.dim) {
        throw Error(ErrorCode::kIndexBounds,
                    "index " + v->var.name + "+" + std::to_string(v->offset) +
                        " (dim " + std::to_string(v->var.dim) +
                        ") exceeds dimension " + std::to_string(shape.dim) +
                        " of '" + leaf.field + "'");
      }
    } else {
      const int value = std::get<IndexTerm::Fixed>(t.term).value;
      if (value < 0 || value >= shape.dim) {
        throw Error(ErrorCode::kIndexBounds,
                    "fixed index " + std::to_string(value) +
                        " outside dimension " + std::to_string(shape.dim) +
                        " of '" + leaf.field + "'");
      }
    }
  };
  for (const IndexTerm& t : leaf.outer) check(t);
  for (const IndexTerm& t : leaf.inner) check(t);
}

// Var-bound slots of one group that share a symmetry class must carry the
// same offset and index dimension.
void check_class_offsets(const std::vector<IndexTerm>& terms,
                         const SymmetrySpec& sym, const std::string& field) {
  for (const auto& cls : sym.classes(static_cast<int>(terms.size()))) {
    std::optional<int> offset;
    std::optional<int> dim;
    for (int p : cls) {
      const auto* v = terms[static_cast<std::size_t>(p)].as_var();
      if (v == nullptr) continue;
      if ((offset && *offset != v->offset) || (dim && *dim != v->var.dim)) {
        throw Error(ErrorCode::kSymmetryMismatch,
                    "symmetric slots of '" + field +
                        "' are indexed with different offsets or index dimensions");
      }
      offset = v->offset;
      dim = v->var.dim;
    }
  }
}

std::vector<bool> var_mask(const std::vector<IndexTerm>& terms) {
  std::vector<bool> keep;
  for (const IndexTerm& t : terms) keep.push_back(!t.is_fixed());
  return keep;
}

std::string sym_text(const SymmetrySpec& s) {
  std::string out = "[";
  for (std::size_t n = 0; n < s.pairs().size(); ++n) {
    if (n > 0) out += ",";
    out += "(" + std::to_string(s.pairs()[n].first) + "," +
           std::to_string(s.pairs()[n].second) + ")";
  }
  return out + "]";
}

std::string terms_text(const std::vector<IndexTerm>& terms) {
  std::string out = "[";
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (n > 0) out += ",";
    if (const auto* v = terms[n].as_var()) {
      out += "v" + v->var.name + "+" + std::to_string(v->offset);
    } else {
      out += "f" + std::to_string(std::get<IndexTerm::Fixed>(terms[n].term).value);
    }
  }
  return out + "]";
}

std::string leaf_terms_text(const TensorLeaf& leaf) {
  std::string out = terms_text(leaf.outer);
  if (!leaf.inner.empty()) out += terms_text(leaf.inner);
  return out;
}

void render_signature(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TensorLeaf>) {
          out += "LEAF(" + n.field + "," + leaf_terms_text(n) + ")";
        } else if constexpr (std::is_same_v<T, ScalarConst>) {
          out += "CONST(";
          if (!n.name.empty()) out += n.name + "=";
          out += format_number(n.value) + ")";
        } else if constexpr (std::is_same_v<T, ScalarFieldRef>) {
          out += "FIELD(" + n.name + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          static constexpr const char* kNames[] = {"ADD", "SUB", "MUL", "DIV"};
          out += kNames[static_cast<int>(n.op)];
          out += "(";
          render_signature(*n.lhs, out);
          out += ",";
          render_signature(*n.rhs, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Unary>) {
          out += n.op == UnaryOp::kNeg ? "NEG(" : "SQRT(";
          render_signature(*n.operand, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, SumNode>) {
          out += "SUM(v" + n.var.name + ",";
          render_signature(*n.body, out);
          out += ")";
        }
      },
      e.node);
}

// Name -> value bindings; later entries shadow earlier ones.
using Bindings = std::vector<std::pair<std::string, int>>;

int lookup(const Bindings& b, const std::string& name) {
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  throw Error(ErrorCode::kUnknownName, "unbound index '" + name + "'");
}

int leaf_slot(const ShapeLayout& layout, const TensorLeaf& leaf,
              const Bindings& b) {
  auto resolve = [&](const std::vector<IndexTerm>& terms) {
    MultiIndex idx;
    idx.reserve(terms.size());
    for (const IndexTerm& t : terms) {
      if (const auto* v = t.as_var()) {
        idx.push_back(lookup(b, v->var.name) + v->offset);
      } else {
        idx.push_back(std::get<IndexTerm::Fixed>(t.term).value);
      }
    }
    return idx;
  };
  return layout.slot(resolve(leaf.outer), resolve(leaf.inner));
}

}  // namespace

IndexSet free_indices(const Expr& e) {
  return std::visit(
      [](const auto& n) -> IndexSet {
        using T = std::decay_t<decltype(n)>;
        IndexSet out;
        if constexpr (std::is_same_v<T, TensorLeaf>) {
          add_vars(n.outer, out);
          add_vars(n.inner, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          IndexSet l = free_indices(*n.lhs);
          IndexSet r = free_indices(*n.rhs);
          if (n.op == BinaryOp::kAdd || n.op == BinaryOp::kSub) {
            if (l != r) {
              throw Error(ErrorCode::kIndexMismatch,
                          std::string("operands of '") +
                              (n.op == BinaryOp::kAdd ? "+" : "-") +
                              "' have different free indices " + set_text(l) +
                              " and " + set_text(r));
            }
            return l;
          }
          l.insert(r.begin(), r.end());
          return l;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return free_indices(*n.operand);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          IndexSet body = free_indices(*n.body);
          if (body.erase(n.var) == 0) {
            throw Error(ErrorCode::kSumVarAbsent,
                        "Sum over '" + n.var.name +
                            "' but it is not a free index of the summand " +
                            set_text(body));
          }
          return body;
        }
        return out;
      },
      e.node);
}

const TensorShape& ValidatedStatement::shape_of(const std::string& name) const {
  return require_tensor(fields, name);
}

ValidatedStatement validate_statement(const Statement& s,
                                      const Declarations& decls) {
  if (!s.rhs) {
    throw Error(ErrorCode::kInvalidArgument, where(s) + ": missing right-hand side");
  }
  ValidatedStatement out{s, {}, {}};

  // Names and term counts.
  const TensorShape& lhs_shape = require_tensor(decls, s.lhs.field);
  check_term_counts(s.lhs, lhs_shape);
  out.fields.emplace(s.lhs.field, decls.at(s.lhs.field));
  std::vector<IndexVar> sums;
  for_each_leaf(*s.rhs, sums,
                [&](const TensorLeaf& leaf, const std::vector<IndexVar>&) {
                  check_term_counts(leaf, require_tensor(decls, leaf.field));
                  out.fields.emplace(leaf.field, decls.at(leaf.field));
                });
  for_each_node(*s.rhs, [&](const Expr& e) {
    if (const auto* f = std::get_if<ScalarFieldRef>(&e.node)) {
      auto it = decls.find(f->name);
      if (it == decls.end()) {
        throw Error(ErrorCode::kUnknownName, "undeclared field '" + f->name + "'");
      }
      if (!std::holds_alternative<ScalarFieldDecl>(it->second)) {
        throw Error(ErrorCode::kKindMismatch,
                    "'" + f->name + "' is not a scalar field");
      }
      out.fields.emplace(f->name, it->second);
    }
  });

  // (1) Unique lhs variables.
  IndexSet lhs_free;
  for (const auto* group : {&s.lhs.outer, &s.lhs.inner}) {
    for (const IndexTerm& t : *group) {
      const auto* v = t.as_var();
      if (v == nullptr) continue;
      if (!lhs_free.insert(v->var).second) {
        throw Error(ErrorCode::kRepeatedIndex,
                    "index '" + v->var.name +
                        "' repeated on the left-hand side of '" + s.lhs.field +
                        "'");
      }
    }
  }

  // (2) Free-index agreement.
  const IndexSet rhs_free = free_indices(*s.rhs);
  if (!rhs_free.empty() && rhs_free != lhs_free) {
    throw Error(ErrorCode::kFreeIndexMismatch,
                "left-hand side free indices " + set_text(lhs_free) +
                    " differ from right-hand side " + set_text(rhs_free));
  }
  for_each_node(*s.rhs, [&](const Expr& e) {
    if (const auto* sum = std::get_if<SumNode>(&e.node)) {
      if (lhs_free.count(sum->var) != 0) {
        throw Error(ErrorCode::kFreeIndexMismatch,
                    "Sum variable '" + sum->var.name +
                        "' is also a left-hand side index");
      }
    }
  });

  // (3) Symmetry agreement on the variable-bound slots.
  const SymmetrySpec declared = s.lhs.declared_sym.value_or(SymmetrySpec{});
  try {
    declared.check_rank(lhs_shape.outer_rank);
  } catch (const Error& e) {
    throw Error(ErrorCode::kSymmetryMismatch,
                "declared symmetry of '" + s.lhs.field + "': " + e.what());
  }
  const std::vector<bool> outer_keep = var_mask(s.lhs.outer);
  const SymmetrySpec declared_vars = declared.restricted(outer_keep);
  const SymmetrySpec field_vars = lhs_shape.outer_sym.restricted(outer_keep);
  if (declared_vars != field_vars) {
    throw Error(ErrorCode::kSymmetryMismatch,
                "declared symmetry " + sym_text(declared) + " of '" +
                    s.lhs.field + "' does not match its storage symmetry " +
                    sym_text(lhs_shape.outer_sym));
  }
  check_class_offsets(s.lhs.outer, lhs_shape.outer_sym, s.lhs.field);
  check_class_offsets(s.lhs.inner, lhs_shape.inner_sym, s.lhs.field);

  // (4) Dimension bounds, including offsets.
  check_bounds(s.lhs, lhs_shape);
  sums.clear();
  for_each_leaf(*s.rhs, sums,
                [&](const TensorLeaf& leaf, const std::vector<IndexVar>&) {
                  check_bounds(leaf, require_tensor(decls, leaf.field));
                });

  // (5) Scalar-valued operands.
  for_each_node(*s.rhs, [&](const Expr& e) {
    if (const auto* b = std::get_if<Binary>(&e.node)) {
      if (b->op == BinaryOp::kDiv && !free_indices(*b->rhs).empty()) {
        throw Error(ErrorCode::kNotScalar,
                    "divisor must be scalar-valued, has free indices " +
                        set_text(free_indices(*b->rhs)));
      }
    } else if (const auto* u = std::get_if<Unary>(&e.node)) {
      if (u->op == UnaryOp::kSqrt && !free_indices(*u->operand).empty()) {
        throw Error(ErrorCode::kNotScalar,
                    "sqrt argument must be scalar-valued, has free indices " +
                        set_text(free_indices(*u->operand)));
      }
    }
  });
  if ((s.op == AssignOp::kMul || s.op == AssignOp::kDiv) && !rhs_free.empty()) {
    throw Error(ErrorCode::kNotScalar,
                std::string("'") + std::string(assign_op_token(s.op)) +
                    "' requires a scalar-valued right-hand side");
  }

  // Loop space: outer variables then inner ones.
  LoopSpace& loops = out.loops;
  for (const auto* group : {&s.lhs.outer, &s.lhs.inner}) {
    for (const IndexTerm& t : *group) {
      if (const auto* v = t.as_var()) {
        loops.vars.push_back(v->var);
        loops.dims.push_back(v->var.dim);
      }
    }
  }
  const int n_outer = static_cast<int>(
      std::count(outer_keep.begin(), outer_keep.end(), true));
  std::vector<Inequality> pairs = declared_vars.pairs();
  const SymmetrySpec inner_vars = lhs_shape.inner_sym.restricted(var_mask(s.lhs.inner));
  for (const Inequality& q : inner_vars.pairs()) {
    pairs.push_back({q.first + n_outer, q.second + n_outer});
  }
  loops.sym = SymmetrySpec(std::move(pairs));
  return out;
}

std::string signature(const ValidatedStatement& s) {
  const TensorShape& shape = s.lhs_shape();
  std::string out = "ASSIGN(";
  out += assign_op_name(s.stmt.op);
  out += ";LHS(" + s.stmt.lhs.field + "," + std::to_string(shape.dim) + ",[" +
         std::to_string(shape.outer_rank) + "," +
         std::to_string(shape.inner_rank) + "]," +
         sym_text(s.stmt.lhs.declared_sym.value_or(SymmetrySpec{})) + "," +
         leaf_terms_text(s.stmt.lhs) + ");";
  render_signature(*s.stmt.rhs, out);
  out += ")";
  return out;
}

DataCount count_data(const ValidatedStatement& s) {
  DataCount count;
  std::map<std::string, std::set<int>> touched;
  std::map<std::string, ShapeLayout> layouts;
  auto layout_of = [&](const std::string& name) -> const ShapeLayout& {
    auto it = layouts.find(name);
    if (it == layouts.end()) {
      it = layouts.emplace(name, ShapeLayout(s.shape_of(name))).first;
    }
    return it->second;
  };

  // Left-hand side loop assignments, visited once.
  std::vector<MultiIndex> assignments;
  for_each_index(s.loops.dims, s.loops.sym,
                 [&](const MultiIndex& idx) { assignments.push_back(idx); });

  auto bind_lhs = [&](const MultiIndex& idx, const std::vector<bool>& used,
                      Bindings& b) {
    for (std::size_t n = 0; n < idx.size(); ++n) {
      if (used[n]) b.emplace_back(s.loops.vars[n].name, idx[n]);
    }
  };

  {
    const ShapeLayout& lhs = layout_of(s.stmt.lhs.field);
    const std::vector<bool> all(s.loops.vars.size(), true);
    for (const MultiIndex& idx : assignments) {
      Bindings b;
      bind_lhs(idx, all, b);
      touched[s.stmt.lhs.field].insert(leaf_slot(lhs, s.stmt.lhs, b));
    }
  }

  // Each leaf only depends on the loop variables it mentions: project the
  // assignments onto those, then sweep its Sum variables independently.
  std::vector<IndexVar> sums;
  for_each_leaf(
      *s.stmt.rhs, sums,
      [&](const TensorLeaf& leaf, const std::vector<IndexVar>& enclosing) {
        const ShapeLayout& layout = layout_of(leaf.field);
        IndexSet mentioned;
        add_vars(leaf.outer, mentioned);
        add_vars(leaf.inner, mentioned);

        std::vector<IndexVar> sum_vars;
        for (auto it = enclosing.rbegin(); it != enclosing.rend(); ++it) {
          if (mentioned.count(*it) != 0 &&
              std::none_of(sum_vars.begin(), sum_vars.end(),
                           [&](const IndexVar& v) { return v.name == it->name; })) {
            sum_vars.push_back(*it);
          }
        }
        std::vector<bool> used(s.loops.vars.size(), false);
        for (std::size_t n = 0; n < used.size(); ++n) {
          const bool bound_by_sum =
              std::any_of(sum_vars.begin(), sum_vars.end(),
                          [&](const IndexVar& v) { return v.name == s.loops.vars[n].name; });
          used[n] = mentioned.count(s.loops.vars[n]) != 0 && !bound_by_sum;
        }
        std::set<MultiIndex> projections;
        for (const MultiIndex& idx : assignments) {
          MultiIndex p;
          for (std::size_t n = 0; n < idx.size(); ++n) p.push_back(used[n] ? idx[n] : 0);
          projections.insert(std::move(p));
        }
        std::vector<int> sum_dims;
        for (const IndexVar& v : sum_vars) sum_dims.push_back(v.dim);
        for (const MultiIndex& p : projections) {
          for_each_index(sum_dims, SymmetrySpec{}, [&](const MultiIndex& sv) {
            Bindings b;
            bind_lhs(p, used, b);
            for (std::size_t n = 0; n < sv.size(); ++n) {
              b.emplace_back(sum_vars[n].name, sv[n]);
            }
            touched[leaf.field].insert(leaf_slot(layout, leaf, b));
          });
        }
      });

  for_each_node(*s.stmt.rhs, [&](const Expr& e) {
    if (const auto* f = std::get_if<ScalarFieldRef>(&e.node)) {
      touched[f->name].insert(0);
    } else if (std::holds_alternative<ScalarConst>(e.node)) {
      ++count.doubles;
    }
  });

  for (const auto& [name, slots] : touched) {
    count.elements += static_cast<long long>(slots.size());
  }
  return count;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace tloops
