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

#include "tloops/evaluator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "tloops/error.hpp"

namespace tloops {
namespace {

constexpr std::size_t kChunk = 256;
using Chunk = std::array<double, kChunk>;

std::vector<IndexTerm> substitute_terms(const std::vector<IndexTerm>& terms,
                                        const std::string& var, int value) {
  std::vector<IndexTerm> out = terms;
  for (IndexTerm& t : out) {
    if (const auto* v = t.as_var(); v != nullptr && v->var.name == var) {
      t = IndexTerm::fixed(value + v->offset);
    }
  }
  return out;
}

// --- field resolution --------------------------------------------------------

struct Resolved {
  TensorField* lhs = nullptr;
  std::map<std::string, const TensorField*> tensors;
  std::map<std::string, const ScalarField*> scalars;
  std::size_t gridsize = 0;
};

Resolved resolve_fields(const ValidatedStatement& s, FieldStore& env) {
  const std::string& lhs_name = s.stmt.lhs.field;
  const TensorShape& lhs_shape = s.lhs_shape();
  if (env.find(lhs_name) == nullptr) {
    env.put(TensorField(lhs_name, lhs_shape, 0));
  }

  // Names read by the right-hand side.
  std::vector<std::string> reads;
  std::function<void(const Expr&)> collect = [&](const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TensorLeaf>) {
            reads.push_back(n.field);
          } else if constexpr (std::is_same_v<T, ScalarFieldRef>) {
            reads.push_back(n.name);
          } else if constexpr (std::is_same_v<T, Binary>) {
            collect(*n.lhs);
            collect(*n.rhs);
          } else if constexpr (std::is_same_v<T, Unary>) {
            collect(*n.operand);
          } else if constexpr (std::is_same_v<T, SumNode>) {
            collect(*n.body);
          }
        },
        e.node);
  };
  collect(*s.stmt.rhs);

  Resolved r;
  for (const auto& [name, decl] : s.fields) {
    const Field* f = env.find(name);
    if (std::holds_alternative<ConstDecl>(decl)) continue;
    if (f == nullptr) {
      throw Error(ErrorCode::kUnknownName, "field '" + name + "' is missing from the data");
    }
    if (const auto* t = std::get_if<TensorDecl>(&decl)) {
      const auto* tf = std::get_if<TensorField>(f);
      if (tf == nullptr) {
        throw Error(ErrorCode::kKindMismatch, "field '" + name + "' is not a tensor");
      }
      if (!tf->shape().equivalent(t->shape)) {
        throw Error(ErrorCode::kShape,
                    "field '" + name + "' does not have its declared shape");
      }
      r.tensors[name] = tf;
    } else {
      const auto* sf = std::get_if<ScalarField>(f);
      if (sf == nullptr) {
        throw Error(ErrorCode::kKindMismatch,
                    "field '" + name + "' is not a scalar field");
      }
      r.scalars[name] = sf;
    }
  }

  std::sort(reads.begin(), reads.end());
  reads.erase(std::unique(reads.begin(), reads.end()), reads.end());
  bool have_n = false;
  for (const std::string& name : reads) {
    const std::size_t n = r.tensors.count(name) != 0 ? r.tensors[name]->gridsize()
                                                     : r.scalars[name]->gridsize();
    if (n == 0) {
      throw Error(ErrorCode::kGridsize, "field '" + name + "' is empty (gridsize 0)");
    }
    if (have_n && n != r.gridsize) {
      throw Error(ErrorCode::kGridsize,
                  "field '" + name + "' has gridsize " + std::to_string(n) +
                      ", expected " + std::to_string(r.gridsize));
    }
    r.gridsize = n;
    have_n = true;
  }

  TensorField& lhs = env.tensor(lhs_name);
  if (!have_n) r.gridsize = lhs.gridsize();
  if (lhs.gridsize() != r.gridsize) {
    if (s.stmt.op != AssignOp::kSet) {
      throw Error(ErrorCode::kGridsize,
                  "field '" + lhs_name + "' has gridsize " +
                      std::to_string(lhs.gridsize()) + " but the right-hand side has " +
                      std::to_string(r.gridsize));
    }
    lhs.resize(r.gridsize);
  }
  r.lhs = &lhs;
  // The lhs may also be read; point at the live object.
  if (r.tensors.count(lhs_name) != 0) r.tensors[lhs_name] = &lhs;
  return r;
}

MultiIndex resolve_terms(const std::vector<IndexTerm>& terms,
                         const std::map<std::string, int>& bindings) {
  MultiIndex idx;
  idx.reserve(terms.size());
  for (const IndexTerm& t : terms) {
    if (const auto* v = t.as_var()) {
      idx.push_back(bindings.at(v->var.name) + v->offset);
    } else {
      idx.push_back(std::get<IndexTerm::Fixed>(t.term).value);
    }
  }
  return idx;
}

int lhs_slot(const ValidatedStatement& s, const TensorField& lhs,
             const std::map<std::string, int>& bindings) {
  return lhs.layout().slot(resolve_terms(s.stmt.lhs.outer, bindings),
                           resolve_terms(s.stmt.lhs.inner, bindings));
}

std::map<std::string, int> bind(const LoopSpace& loops, const MultiIndex& idx) {
  std::map<std::string, int> b;
  for (std::size_t n = 0; n < idx.size(); ++n) b[loops.vars[n].name] = idx[n];
  return b;
}

void combine(AssignOp op, double* out, const double* v, std::size_t len) {
  switch (op) {
    case AssignOp::kSet:
      for (std::size_t x = 0; x < len; ++x) out[x] = v[x];
      break;
    case AssignOp::kAdd:
      for (std::size_t x = 0; x < len; ++x) out[x] = out[x] + v[x];
      break;
    case AssignOp::kSub:
      for (std::size_t x = 0; x < len; ++x) out[x] = out[x] - v[x];
      break;
    case AssignOp::kMul:
      for (std::size_t x = 0; x < len; ++x) out[x] = out[x] * v[x];
      break;
    case AssignOp::kDiv:
      for (std::size_t x = 0; x < len; ++x) out[x] = out[x] / v[x];
      break;
  }
}

template <class Body>
void parallel_for(std::size_t n, unsigned threads, const Body& body) {
  if (threads <= 1 || n < 2 * kChunk) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t parts = std::min<std::size_t>(threads, n / kChunk);
  std::vector<std::jthread> workers;
  workers.reserve(parts);
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t begin = n * p / parts;
    const std::size_t end = n * (p + 1) / parts;
    workers.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

// --- whole-tensor path: postfix program per assignment ----------------------

struct Instr {
  enum Op { kLoad, kConst, kAdd, kSub, kMul, kDiv, kNeg, kSqrt } op;
  const double* ptr = nullptr;
  double value = 0.0;
};

struct Program {
  double* out = nullptr;
  std::vector<Instr> code;
  std::size_t depth = 0;
};

class Compiler {
 public:
  explicit Compiler(const Resolved& r) : r_(r) {}

  Program compile(const Expr& e, std::map<std::string, int> bindings,
                  double* out) {
    bindings_ = std::move(bindings);
    Program p;
    p.out = out;
    height_ = 0;
    max_ = 0;
    emit(e, p.code);
    p.depth = max_;
    return p;
  }

 private:
  void push() { max_ = std::max(max_, ++height_); }
  void pop() { --height_; }

  void emit(const Expr& e, std::vector<Instr>& code) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TensorLeaf>) {
            const TensorField& f = *r_.tensors.at(n.field);
            const int slot = f.layout().slot(resolve_terms(n.outer, bindings_),
                                             resolve_terms(n.inner, bindings_));
            code.push_back({Instr::kLoad, f.slot(slot).data(), 0.0});
            push();
          } else if constexpr (std::is_same_v<T, ScalarConst>) {
            code.push_back({Instr::kConst, nullptr, n.value});
            push();
          } else if constexpr (std::is_same_v<T, ScalarFieldRef>) {
            code.push_back({Instr::kLoad, r_.scalars.at(n.name)->values.data(), 0.0});
            push();
          } else if constexpr (std::is_same_v<T, Binary>) {
            emit(*n.lhs, code);
            emit(*n.rhs, code);
            static constexpr Instr::Op kOps[] = {Instr::kAdd, Instr::kSub,
                                                 Instr::kMul, Instr::kDiv};
            code.push_back({kOps[static_cast<int>(n.op)], nullptr, 0.0});
            pop();
          } else if constexpr (std::is_same_v<T, Unary>) {
            emit(*n.operand, code);
            code.push_back({n.op == UnaryOp::kNeg ? Instr::kNeg : Instr::kSqrt,
                            nullptr, 0.0});
          } else if constexpr (std::is_same_v<T, SumNode>) {
            auto saved = bindings_.find(n.var.name) != bindings_.end()
                             ? std::optional<int>(bindings_[n.var.name])
                             : std::nullopt;
            for (int v = 0; v < n.var.dim; ++v) {
              bindings_[n.var.name] = v;
              emit(*n.body, code);
              if (v > 0) {
                code.push_back({Instr::kAdd, nullptr, 0.0});
                pop();
              }
            }
            if (saved) {
              bindings_[n.var.name] = *saved;
            } else {
              bindings_.erase(n.var.name);
            }
          }
        },
        e.node);
  }

  const Resolved& r_;
  std::map<std::string, int> bindings_;
  std::size_t height_ = 0;
  std::size_t max_ = 0;
};

void run_program(const Program& p, AssignOp op, std::size_t begin,
                 std::size_t end, std::vector<Chunk>& stack) {
  if (stack.size() < p.depth) stack.resize(p.depth);
  for (std::size_t x0 = begin; x0 < end; x0 += kChunk) {
    const std::size_t len = std::min(kChunk, end - x0);
    std::size_t top = 0;
    for (const Instr& in : p.code) {
      switch (in.op) {
        case Instr::kLoad: {
          double* d = stack[top++].data();
          const double* src = in.ptr + x0;
          for (std::size_t x = 0; x < len; ++x) d[x] = src[x];
          break;
        }
        case Instr::kConst: {
          double* d = stack[top++].data();
          for (std::size_t x = 0; x < len; ++x) d[x] = in.value;
          break;
        }
        case Instr::kNeg: {
          double* d = stack[top - 1].data();
          for (std::size_t x = 0; x < len; ++x) d[x] = -d[x];
          break;
        }
        case Instr::kSqrt: {
          double* d = stack[top - 1].data();
          for (std::size_t x = 0; x < len; ++x) d[x] = std::sqrt(d[x]);
          break;
        }
        default: {
          double* a = stack[top - 2].data();
          const double* b = stack[top - 1].data();
          --top;
          switch (in.op) {
            case Instr::kAdd:
              for (std::size_t x = 0; x < len; ++x) a[x] = a[x] + b[x];
              break;
            case Instr::kSub:
              for (std::size_t x = 0; x < len; ++x) a[x] = a[x] - b[x];
              break;
            case Instr::kMul:
              for (std::size_t x = 0; x < len; ++x) a[x] = a[x] * b[x];
              break;
            default:
              for (std::size_t x = 0; x < len; ++x) a[x] = a[x] / b[x];
              break;
          }
        }
      }
    }
    combine(op, p.out + x0, stack[0].data(), len);
  }
}

// --- per-component path: tree walk over substituted scalar expressions ------

class TreeEval {
 public:
  explicit TreeEval(const Resolved& r) : r_(r) {}

  void eval(const Expr& e, std::size_t x0, std::size_t len, double* out) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TensorLeaf>) {
            const TensorField& f = *r_.tensors.at(n.field);
            const auto src = f.component(fixed(n.outer), fixed(n.inner));
            for (std::size_t x = 0; x < len; ++x) out[x] = src[x0 + x];
          } else if constexpr (std::is_same_v<T, ScalarConst>) {
            for (std::size_t x = 0; x < len; ++x) out[x] = n.value;
          } else if constexpr (std::is_same_v<T, ScalarFieldRef>) {
            const std::vector<double>& src = r_.scalars.at(n.name)->values;
            for (std::size_t x = 0; x < len; ++x) out[x] = src[x0 + x];
          } else if constexpr (std::is_same_v<T, Binary>) {
            Chunk rhs;
            eval(*n.lhs, x0, len, out);
            eval(*n.rhs, x0, len, rhs.data());
            for (std::size_t x = 0; x < len; ++x) {
              switch (n.op) {
                case BinaryOp::kAdd: out[x] = out[x] + rhs[x]; break;
                case BinaryOp::kSub: out[x] = out[x] - rhs[x]; break;
                case BinaryOp::kMul: out[x] = out[x] * rhs[x]; break;
                case BinaryOp::kDiv: out[x] = out[x] / rhs[x]; break;
              }
            }
          } else if constexpr (std::is_same_v<T, Unary>) {
            eval(*n.operand, x0, len, out);
            for (std::size_t x = 0; x < len; ++x) {
              out[x] = n.op == UnaryOp::kNeg ? -out[x] : std::sqrt(out[x]);
            }
          } else {
            throw Error(ErrorCode::kInvalidArgument,
                        "per-component evaluation needs expanded sums");
          }
        },
        e.node);
  }

 private:
  static MultiIndex fixed(const std::vector<IndexTerm>& terms) {
    MultiIndex idx;
    for (const IndexTerm& t : terms) {
      if (t.is_fixed()) {
        idx.push_back(std::get<IndexTerm::Fixed>(t.term).value);
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unbound index '" + t.as_var()->var.name + "'");
      }
    }
    return idx;
  }

  const Resolved& r_;
};

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::string& var, int value) {
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TensorLeaf>) {
          TensorLeaf leaf = n;
          leaf.outer = substitute_terms(n.outer, var, value);
          leaf.inner = substitute_terms(n.inner, var, value);
          return make_leaf(std::move(leaf));
        } else if constexpr (std::is_same_v<T, Binary>) {
          return make_binary(n.op, substitute(n.lhs, var, value),
                             substitute(n.rhs, var, value));
        } else if constexpr (std::is_same_v<T, Unary>) {
          return make_unary(n.op, substitute(n.operand, var, value));
        } else if constexpr (std::is_same_v<T, SumNode>) {
          if (n.var.name == var) return e;
          return make_sum(n.var, substitute(n.body, var, value));
        } else {
          return e;
        }
      },
      e->node);
}

ExprPtr expand_sum(const SumNode& sum) {
  ExprPtr out;
  for (int v = 0; v < sum.var.dim; ++v) {
    ExprPtr term = substitute(sum.body, sum.var.name, v);
    out = out ? make_binary(BinaryOp::kAdd, out, term) : term;
  }
  return out;
}

ExprPtr expand_all_sums(const ExprPtr& e) {
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>) {
          return make_binary(n.op, expand_all_sums(n.lhs), expand_all_sums(n.rhs));
        } else if constexpr (std::is_same_v<T, Unary>) {
          return make_unary(n.op, expand_all_sums(n.operand));
        } else if constexpr (std::is_same_v<T, SumNode>) {
          return expand_sum(SumNode{n.var, expand_all_sums(n.body)});
        } else {
          return e;
        }
      },
      e->node);
}

void eval_statement(const ValidatedStatement& s, FieldStore& env,
                    const EvalOptions& opts) {
  const Resolved r = resolve_fields(s, env);
  Compiler compiler(r);
  std::vector<Program> programs;
  for_each_index(s.loops.dims, s.loops.sym, [&](const MultiIndex& idx) {
    const auto bindings = bind(s.loops, idx);
    const int slot = lhs_slot(s, *r.lhs, bindings);
    if (opts.on_write) opts.on_write(s.stmt.lhs.field, slot);
    programs.push_back(compiler.compile(*s.stmt.rhs, bindings, r.lhs->slot(slot).data()));
  });
  parallel_for(r.gridsize, opts.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Chunk> stack;
    for (const Program& p : programs) run_program(p, s.stmt.op, begin, end, stack);
  });
}

void eval_statement_per_component(const ValidatedStatement& s, FieldStore& env,
                                  const EvalOptions& opts) {
  const Resolved r = resolve_fields(s, env);
  struct Component {
    double* out;
    ExprPtr rhs;
  };
  std::vector<Component> components;
  for_each_index(s.loops.dims, s.loops.sym, [&](const MultiIndex& idx) {
    const auto bindings = bind(s.loops, idx);
    const int slot = lhs_slot(s, *r.lhs, bindings);
    if (opts.on_write) opts.on_write(s.stmt.lhs.field, slot);
    ExprPtr rhs = s.stmt.rhs;
    for (const auto& [name, value] : bindings) rhs = substitute(rhs, name, value);
    components.push_back({r.lhs->slot(slot).data(), expand_all_sums(rhs)});
  });
  TreeEval tree(r);
  parallel_for(r.gridsize, opts.threads, [&](std::size_t begin, std::size_t end) {
    Chunk value;
    for (const Component& c : components) {
      for (std::size_t x0 = begin; x0 < end; x0 += kChunk) {
        const std::size_t len = std::min(kChunk, end - x0);
        tree.eval(*c.rhs, x0, len, value.data());
        combine(s.stmt.op, c.out + x0, value.data(), len);
      }
    }
  });
}

std::string_view eval_mode_name(EvalMode mode) {
  return mode == EvalMode::kWholeTensor ? "whole-tensor" : "per-component";
}

void eval(const ValidatedStatement& s, FieldStore& env, EvalMode mode,
          const EvalOptions& opts) {
  if (mode == EvalMode::kWholeTensor) {
    eval_statement(s, env, opts);
  } else {
    eval_statement_per_component(s, env, opts);
  }
}

}  // namespace tloops
