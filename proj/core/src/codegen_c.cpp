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

#include "tloops/codegen_c.hpp"

#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include "codegen_common.hpp"
#include "tloops/error.hpp"
#include "tloops/parser.hpp"

namespace tloops {
namespace detail {
namespace {

void visit_preorder(const Expr& e, const std::function<void(const Expr&)>& f) {
  f(e);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>) {
          visit_preorder(*n.lhs, f);
          visit_preorder(*n.rhs, f);
        } else if constexpr (std::is_same_v<T, Unary>) {
          visit_preorder(*n.operand, f);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          visit_preorder(*n.body, f);
        }
      },
      e.node);
}

bool reserved_identifier(const std::string& name) {
  static const std::set<std::string> kWords = {
      "auto", "break", "case", "char", "const", "continue", "default", "do",
      "double", "else", "enum", "extern", "float", "for", "goto", "if",
      "inline", "int", "long", "register", "restrict", "return", "short",
      "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
      "unsigned", "void", "volatile", "while", "_Bool", "_Complex",
      "_Imaginary", "x", "N", "L", "sqrt", "threadIdx", "blockIdx",
      "blockDim", "gridDim", "dim3", "__global__", "__restrict__"};
  static const std::regex kParam("[RFds][0-9]+");
  return kWords.count(name) != 0 || std::regex_match(name, kParam);
}

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return (b->op == BinaryOp::kAdd || b->op == BinaryOp::kSub) ? 1 : 2;
  }
  if (const auto* u = std::get_if<Unary>(&e.node)) {
    return u->op == UnaryOp::kNeg ? 3 : 4;
  }
  return 4;
}

}  // namespace

ParamMap collect_params(const ValidatedStatement& s) {
  ParamMap m;
  ArgumentSpec lhs;
  lhs.role = ArgRole::kLhs;
  lhs.param = "L";
  lhs.field = s.stmt.lhs.field;
  lhs.shape = s.lhs_shape();
  m.args.push_back(lhs);
  int n_tensor = 0;
  int n_scalar = 0;
  int n_const = 0;
  visit_preorder(*s.stmt.rhs, [&](const Expr& e) {
    if (const auto* leaf = std::get_if<TensorLeaf>(&e.node)) {
      if (m.tensor.count(leaf->field) != 0) return;
      ArgumentSpec a;
      a.role = ArgRole::kTensor;
      a.param = "R" + std::to_string(n_tensor++);
      a.field = leaf->field;
      a.shape = s.shape_of(leaf->field);
      m.tensor[leaf->field] = a.param;
      m.args.push_back(std::move(a));
    } else if (const auto* f = std::get_if<ScalarFieldRef>(&e.node)) {
      if (m.scalar.count(f->name) != 0) return;
      ArgumentSpec a;
      a.role = ArgRole::kScalarField;
      a.param = "F" + std::to_string(n_scalar++);
      a.field = f->name;
      m.scalar[f->name] = a.param;
      m.args.push_back(std::move(a));
    } else if (const auto* c = std::get_if<ScalarConst>(&e.node)) {
      if (m.constant.count(&e) != 0) return;
      ArgumentSpec a;
      a.role = ArgRole::kConstant;
      a.param = "d" + std::to_string(n_const++);
      a.field = c->name;
      a.value = c->value;
      m.constant[&e] = a.param;
      m.args.push_back(std::move(a));
    }
  });
  return m;
}

std::map<std::string, std::string> index_identifiers(const ValidatedStatement& s) {
  std::set<std::string> names;
  for (const IndexVar& v : s.loops.vars) names.insert(v.name);
  visit_preorder(*s.stmt.rhs, [&](const Expr& e) {
    if (const auto* leaf = std::get_if<TensorLeaf>(&e.node)) {
      for (const auto* group : {&leaf->outer, &leaf->inner}) {
        for (const IndexTerm& t : *group) {
          if (const auto* v = t.as_var()) names.insert(v->var.name);
        }
      }
    } else if (const auto* sum = std::get_if<SumNode>(&e.node)) {
      names.insert(sum->var.name);
    }
  });
  std::map<std::string, std::string> out;
  std::set<std::string> taken;
  for (const std::string& name : names) {
    if (!reserved_identifier(name)) taken.insert(name);
  }
  for (const std::string& name : names) {
    if (!reserved_identifier(name)) {
      out[name] = name;
      continue;
    }
    std::string id = name + "_";
    while (reserved_identifier(id) || taken.count(id) != 0) id += "_";
    taken.insert(id);
    out[name] = id;
  }
  return out;
}

std::string flat_index(const TensorLeaf& leaf, int dim,
                       const std::map<std::string, std::string>& names) {
  std::string vars;
  long long constant = 0;
  long long stride = 1;
  for (const auto* group : {&leaf.outer, &leaf.inner}) {
    for (const IndexTerm& t : *group) {
      if (const auto* v = t.as_var()) {
        if (!vars.empty()) vars += " + ";
        if (stride != 1) vars += std::to_string(stride) + "*";
        vars += names.at(v->var.name);
        constant += static_cast<long long>(v->offset) * stride;
      } else {
        constant += static_cast<long long>(std::get<IndexTerm::Fixed>(t.term).value) * stride;
      }
      stride *= dim;
    }
  }
  if (vars.empty()) return std::to_string(constant);
  if (constant != 0) vars += " + " + std::to_string(constant);
  return vars;
}

std::string render_c(const Expr& e,
                     const std::function<std::string(const Expr&)>& atom) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    const int p = precedence(e);
    std::string l = render_c(*b->lhs, atom);
    std::string r = render_c(*b->rhs, atom);
    if (precedence(*b->lhs) < p) l = "(" + l + ")";
    if (precedence(*b->rhs) <= p) r = "(" + r + ")";
    static constexpr const char* kOps[] = {" + ", " - ", "*", "/"};
    return l + kOps[static_cast<int>(b->op)] + r;
  }
  if (const auto* u = std::get_if<Unary>(&e.node)) {
    std::string o = render_c(*u->operand, atom);
    if (u->op == UnaryOp::kSqrt) return "sqrt(" + o + ")";
    if (precedence(*u->operand) < 4) o = "(" + o + ")";
    return "-" + o;
  }
  return atom(e);
}

std::string ordinal_text(int ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", ordinal);
  return buf;
}

std::string indent(int depth) { return std::string(static_cast<std::size_t>(depth) * 2, ' '); }

}  // namespace detail

using namespace detail;

std::string_view arg_role_name(ArgRole role) {
  switch (role) {
    case ArgRole::kLhs: return "lhs";
    case ArgRole::kTensor: return "tensor";
    case ArgRole::kScalarField: return "scalar";
    case ArgRole::kConstant: return "const";
  }
  return "tensor";
}

int ArgumentSpec::pointer_count() const {
  if (role != ArgRole::kLhs && role != ArgRole::kTensor) return 1;
  return static_cast<int>(ShapeLayout(shape).flat_size());
}

std::vector<ArgumentSpec> kernel_arguments(const ValidatedStatement& s) {
  return collect_params(s).args;
}

std::vector<ArgumentSpec> call_order(const std::vector<ArgumentSpec>& args) {
  std::vector<ArgumentSpec> out;
  for (ArgRole role : {ArgRole::kLhs, ArgRole::kTensor, ArgRole::kScalarField,
                       ArgRole::kConstant}) {
    for (const ArgumentSpec& a : args) {
      if (a.role == role) out.push_back(a);
    }
  }
  return out;
}

std::string c_kernel_name(int ordinal) { return "tl_" + ordinal_text(ordinal); }

namespace {

std::string c_parameter(const ArgumentSpec& a) {
  switch (a.role) {
    case ArgRole::kLhs: return "double* const* " + a.param;
    case ArgRole::kTensor: return "const double* const* " + a.param;
    case ArgRole::kScalarField: return "const double* " + a.param;
    case ArgRole::kConstant: return "const double " + a.param;
  }
  return {};
}

class CEmitter {
 public:
  CEmitter(const ValidatedStatement& s, const ParamMap& params)
      : s_(s), params_(params), names_(index_identifiers(s)) {}

  void body(std::ostringstream& os) {
    const LoopSpace& loops = s_.loops;
    const int rank = static_cast<int>(loops.vars.size());
    const std::vector<int> partner = lower_bound_partners(loops.sym, rank);
    int depth = 1;
    for (int p = rank - 1; p >= 0; --p) {
      const std::string v = names_.at(loops.vars[static_cast<std::size_t>(p)].name);
      const std::string start =
          partner[static_cast<std::size_t>(p)] < 0
              ? "0"
              : names_.at(loops.vars[static_cast<std::size_t>(partner[p])].name);
      os << indent(depth) << "for(int " << v << "=" << start << "; " << v << "<"
         << loops.dims[static_cast<std::size_t>(p)] << "; ++" << v << "){\n";
      ++depth;
    }
    os << indent(depth) << "for(long x=0; x<N; ++x){\n";
    ++depth;
    std::vector<std::string> lines;
    const std::string value = expr(*s_.stmt.rhs, depth, lines);
    for (const std::string& line : lines) os << line << "\n";
    os << indent(depth) << "L[" << flat_index(s_.stmt.lhs, s_.lhs_shape().dim, names_)
       << "][x] " << assign_op_token(s_.stmt.op) << " " << value << ";\n";
    for (--depth; depth >= 1; --depth) os << indent(depth) << "}\n";
  }

 private:
  std::string expr(const Expr& e, int depth, std::vector<std::string>& lines) {
    return render_c(e, [&](const Expr& a) { return atom(a, depth, lines); });
  }

  std::string atom(const Expr& e, int depth, std::vector<std::string>& lines) {
    if (const auto* leaf = std::get_if<TensorLeaf>(&e.node)) {
      return params_.tensor.at(leaf->field) + "[" +
             flat_index(*leaf, s_.shape_of(leaf->field).dim, names_) + "][x]";
    }
    if (const auto* f = std::get_if<ScalarFieldRef>(&e.node)) {
      return params_.scalar.at(f->name) + "[x]";
    }
    if (std::holds_alternative<ScalarConst>(e.node)) {
      return params_.constant.at(&e);
    }
    const auto& sum = std::get<SumNode>(e.node);
    const std::string acc = "s" + std::to_string(next_sum_++);
    const std::string v = names_.at(sum.var.name);
    lines.push_back(indent(depth) + "double " + acc + " = 0;");
    lines.push_back(indent(depth) + "for(int " + v + "=0; " + v + "<" +
                    std::to_string(sum.var.dim) + "; ++" + v + "){");
    std::vector<std::string> inner;
    const std::string term = expr(*sum.body, depth + 1, inner);
    lines.insert(lines.end(), inner.begin(), inner.end());
    lines.push_back(indent(depth + 1) + acc + " += " + term + ";");
    lines.push_back(indent(depth) + "}");
    return acc;
  }

  const ValidatedStatement& s_;
  const ParamMap& params_;
  std::map<std::string, std::string> names_;
  int next_sum_ = 0;
};

}  // namespace

GeneratedUnit emit_c(const ValidatedStatement& s, int ordinal) {
  const ParamMap params = collect_params(s);
  GeneratedUnit unit;
  unit.kernel_name = c_kernel_name(ordinal);
  unit.arguments = params.args;
  std::string proto = "void " + unit.kernel_name + "(const long N";
  for (const ArgumentSpec& a : call_order(params.args)) proto += ", " + c_parameter(a);
  proto += ")";
  unit.prototype = proto;

  std::ostringstream os;
  os << "/* " << render(s.stmt) << " */\n";
  os << proto << "\n{\n";
  CEmitter(s, params).body(os);
  os << "}\n";
  unit.source = os.str();
  return unit;
}

}  // namespace tloops
