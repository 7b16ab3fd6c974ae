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

#include "tloops/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "tloops/error.hpp"

namespace tloops {
namespace {

enum class Tok { kId, kInt, kNum, kPunct, kBad, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string, std::less<>> kReserved = {
    "tensor", "field", "const", "index", "dim",
    "rank",   "sym",   "inner", "Sum",   "sqrt"};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t n = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && n < src.size(); ++k, ++n) {
      if (src[n] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_id_start = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  while (n < src.size()) {
    const char c = src[n];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && n + 1 < src.size() && src[n + 1] == '/')) {
      while (n < src.size() && src[n] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = {line, col};
    const std::size_t start = n;
    if (is_id_start(c)) {
      std::size_t e = n;
      while (e < src.size() && (is_id_start(src[e]) || is_digit(src[e]))) ++e;
      t.kind = Tok::kId;
      t.text = std::string(src.substr(n, e - n));
      advance(e - n);
    } else if (is_digit(c) ||
               (c == '.' && n + 1 < src.size() && is_digit(src[n + 1]))) {
      std::size_t e = n;
      bool real = false;
      while (e < src.size() && is_digit(src[e])) ++e;
      if (e < src.size() && src[e] == '.') {
        real = true;
        ++e;
        while (e < src.size() && is_digit(src[e])) ++e;
      }
      if (e < src.size() && (src[e] == 'e' || src[e] == 'E')) {
        std::size_t k = e + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          real = true;
          e = k;
          while (e < src.size() && is_digit(src[e])) ++e;
        }
      }
      t.kind = real ? Tok::kNum : Tok::kInt;
      t.text = std::string(src.substr(n, e - n));
      advance(e - n);
    } else {
      static constexpr std::string_view kTwo[] = {"+=", "-=", "*=", "/=", "&&"};
      static constexpr std::string_view kOne = "(),;=+-*/<>:";
      t.kind = Tok::kPunct;
      for (std::string_view two : kTwo) {
        if (src.substr(n, 2) == two) {
          t.text = std::string(two);
          break;
        }
      }
      if (t.text.empty()) {
        if (kOne.find(c) != std::string_view::npos) {
          t.text = std::string(1, c);
        } else {
          t.kind = Tok::kBad;
          t.text = std::string(1, c);
        }
      }
      advance(t.text.size());
    }
    (void)start;
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::kEnd;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

struct ParseFailure {
  SourceLoc loc;
  std::string message;
  ErrorCode code = ErrorCode::kParse;
};

constexpr int kMaxDepth = 200;

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {
    for (const IndexVar& v : builtin_indices()) indices_[v.name] = v;
  }

  ParseResult run() {
    ParseResult result;
    while (peek().kind != Tok::kEnd) {
      if (result.diagnostics.size() >= kMaxDiagnostics) break;
      try {
        item();
      } catch (const ParseFailure& f) {
        result.diagnostics.push_back(
            {f.loc, "error[" + std::string(error_code_name(f.code)) + "]: " + f.message});
        synchronize();
      }
    }
    result.program = std::move(program_);
    return result;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[k];
  }

  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message,
                         ErrorCode code = ErrorCode::kParse) const {
    if (at.kind == Tok::kBad) {
      throw ParseFailure{at.loc, "unexpected character '" + at.text + "'"};
    }
    throw ParseFailure{at.loc, message, code};
  }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Tok::kEnd: return "end of input";
      case Tok::kBad: return "'" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::kPunct && t.text == p;
  }

  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::kId && t.text == w;
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) {
      fail(peek(), "expected '" + std::string(p) + "' but found " + describe(peek()));
    }
    next();
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) {
      fail(peek(), "expected '" + std::string(w) + "' but found " + describe(peek()));
    }
    next();
  }

  const Token& expect_name(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::kId) {
      fail(t, std::string("expected ") + what + " but found " + describe(t));
    }
    if (kReserved.count(t.text) != 0) {
      fail(t, "'" + t.text + "' is a reserved word");
    }
    return next();
  }

  int expect_int(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::kInt) {
      fail(t, std::string("expected ") + what + " but found " + describe(t));
    }
    int value = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size()) {
      fail(t, "integer '" + t.text + "' out of range");
    }
    next();
    return value;
  }

  double number_value(const Token& t) const {
    double value = 0.0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size()) {
      fail(t, "number '" + t.text + "' out of range");
    }
    return value;
  }

  void synchronize() {
    while (peek().kind != Tok::kEnd) {
      if (is_punct(";")) {
        next();
        return;
      }
      next();
    }
  }

  // --- items -----------------------------------------------------------------

  void item() {
    const Token& t = peek();
    if (t.kind != Tok::kId) {
      fail(t, "expected a declaration or statement but found " + describe(t));
    }
    if (t.text == "tensor") return tensor_decl();
    if (t.text == "field") return field_decl();
    if (t.text == "const") return const_decl();
    if (t.text == "index") return index_decl();
    statement();
  }

  void declare(const Token& name, FieldDecl decl) {
    if (decls_.count(name.text) != 0) {
      fail(name, "redeclaration of '" + name.text + "'");
    }
    decls_.emplace(name.text, decl);
    program_.declarations.push_back({name.text, std::move(decl), name.loc});
  }

  SymmetrySpec decl_sym() {
    std::vector<Inequality> pairs;
    const Token& at = peek();
    while (is_word("sym")) {
      next();
      expect("(");
      const int p = expect_int("a slot position");
      expect(",");
      const int q = expect_int("a slot position");
      expect(")");
      pairs.push_back({p, q});
    }
    return make_sym(at, std::move(pairs));
  }

  SymmetrySpec make_sym(const Token& at, std::vector<Inequality> pairs) const {
    try {
      return SymmetrySpec(std::move(pairs));
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  void tensor_decl() {
    const Token& kw = next();
    const Token name = expect_name("a tensor name");
    TensorShape shape;
    expect_word("dim");
    shape.dim = expect_int("a dimension");
    expect_word("rank");
    shape.outer_rank = expect_int("a rank");
    shape.outer_sym = decl_sym();
    if (is_word("inner")) {
      next();
      expect_word("rank");
      shape.inner_rank = expect_int("a rank");
      shape.inner_sym = decl_sym();
    }
    try {
      shape.validate();
      if (shape.total_rank() == 0) {
        throw Error(ErrorCode::kShape, "tensor rank must be at least 1");
      }
      ShapeLayout check(shape);
    } catch (const Error& e) {
      fail(kw, "tensor '" + name.text + "': " + e.what());
    }
    expect(";");
    declare(name, TensorDecl{shape});
  }

  void field_decl() {
    next();
    const Token name = expect_name("a field name");
    expect(";");
    declare(name, ScalarFieldDecl{});
  }

  void const_decl() {
    next();
    const Token name = expect_name("a constant name");
    expect("=");
    bool negative = false;
    if (is_punct("-")) {
      negative = true;
      next();
    }
    const Token& t = peek();
    if (t.kind != Tok::kNum && t.kind != Tok::kInt) {
      fail(t, "expected a number but found " + describe(t));
    }
    double value = number_value(t);
    next();
    expect(";");
    declare(name, ConstDecl{negative ? -value : value});
  }

  void index_decl() {
    next();
    const Token name = expect_name("an index name");
    expect(":");
    const Token& dim_tok = peek();
    const int dim = expect_int("an index dimension");
    if (dim <= 0 || dim > 255) {
      fail(dim_tok, "index dimension must be in [1, 255]");
    }
    expect(";");
    if (declared_indices_.count(name.text) != 0) {
      fail(name, "redeclaration of index '" + name.text + "'");
    }
    declared_indices_.insert(name.text);
    IndexVar v{name.text, dim};
    indices_[name.text] = v;
    program_.indices.push_back({v, name.loc});
  }

  // --- statements ------------------------------------------------------------

  const TensorShape& tensor_named(const Token& name) const {
    auto it = decls_.find(name.text);
    if (it == decls_.end()) {
      fail(name, "undeclared name '" + name.text + "'", ErrorCode::kUnknownName);
    }
    const auto* t = std::get_if<TensorDecl>(&it->second);
    if (t == nullptr) {
      fail(name, "'" + name.text + "' is not a tensor and cannot be indexed",
           ErrorCode::kKindMismatch);
    }
    return t->shape;
  }

  std::optional<SymmetrySpec> leaf_sym() {
    if (!(is_word("sym") && is_punct("<", 1))) return std::nullopt;
    const Token& at = peek();
    std::vector<Inequality> pairs;
    for (;;) {
      expect_word("sym");
      expect("<");
      const int p = expect_int("a slot position");
      expect(",");
      const int q = expect_int("a slot position");
      expect(">");
      pairs.push_back({p, q});
      if (!is_punct("&&")) break;
      next();
    }
    expect(",");
    return make_sym(at, std::move(pairs));
  }

  IndexTerm term() {
    const Token& t = peek();
    if (t.kind == Tok::kInt) {
      return IndexTerm::fixed(expect_int("an index"));
    }
    if (t.kind != Tok::kId) {
      fail(t, "expected an index but found " + describe(t));
    }
    auto it = indices_.find(t.text);
    if (it == indices_.end()) {
      fail(t, "undeclared index '" + t.text + "'", ErrorCode::kUnknownName);
    }
    next();
    int offset = 0;
    if (is_punct("+")) {
      next();
      offset = expect_int("an index offset");
    }
    return IndexTerm::variable(it->second, offset);
  }

  std::vector<IndexTerm> terms() {
    std::vector<IndexTerm> out;
    out.push_back(term());
    while (is_punct(",")) {
      next();
      out.push_back(term());
    }
    return out;
  }

  TensorLeaf leaf_after_name(const Token& name) {
    tensor_named(name);
    TensorLeaf leaf;
    leaf.field = name.text;
    expect("(");
    leaf.declared_sym = leaf_sym();
    leaf.outer = terms();
    expect(")");
    if (is_punct("(")) {
      next();
      leaf.inner = terms();
      expect(")");
    }
    return leaf;
  }

  void statement() {
    const Token name = next();
    if (kReserved.count(name.text) != 0) {
      fail(name, "'" + name.text + "' is a reserved word");
    }
    Statement s;
    s.loc = name.loc;
    s.lhs = leaf_after_name(name);
    const Token& op = peek();
    static const std::map<std::string, AssignOp, std::less<>> kOps = {
        {"=", AssignOp::kSet},
        {"+=", AssignOp::kAdd},
        {"-=", AssignOp::kSub},
        {"*=", AssignOp::kMul},
        {"/=", AssignOp::kDiv}};
    auto it = op.kind == Tok::kPunct ? kOps.find(op.text) : kOps.end();
    if (it == kOps.end()) {
      fail(op, "expected an assignment operator but found " + describe(op));
    }
    next();
    s.op = it->second;
    depth_ = 0;
    s.rhs = expr();
    expect(";");
    program_.statements.push_back(std::move(s));
  }

  // --- expressions -----------------------------------------------------------

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) {
        p.fail(p.peek(), "expression nested too deeply");
      }
    }
    ~DepthGuard() { --p.depth_; }
  };

  ExprPtr expr() {
    DepthGuard guard(*this);
    ExprPtr e = product();
    while (is_punct("+") || is_punct("-")) {
      const BinaryOp op = peek().text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      next();
      e = make_binary(op, e, product());
    }
    return e;
  }

  ExprPtr product() {
    ExprPtr e = unary();
    while (is_punct("*") || is_punct("/")) {
      const BinaryOp op = peek().text == "*" ? BinaryOp::kMul : BinaryOp::kDiv;
      next();
      e = make_binary(op, e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    DepthGuard guard(*this);
    if (is_punct("-")) {
      next();
      return make_unary(UnaryOp::kNeg, unary());
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::kInt || t.kind == Tok::kNum) {
      const double v = number_value(t);
      next();
      return make_const(v);
    }
    if (is_punct("(")) {
      next();
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::kId) {
      fail(t, "expected an expression but found " + describe(t));
    }
    if (t.text == "Sum") {
      next();
      expect("(");
      const Token& var_tok = peek();
      if (var_tok.kind != Tok::kId) {
        fail(var_tok, "expected a summation index but found " + describe(var_tok));
      }
      auto it = indices_.find(var_tok.text);
      if (it == indices_.end()) {
        fail(var_tok, "undeclared index '" + var_tok.text + "'", ErrorCode::kUnknownName);
      }
      next();
      expect(",");
      ExprPtr body = expr();
      expect(")");
      return make_sum(it->second, body);
    }
    if (t.text == "sqrt") {
      next();
      expect("(");
      ExprPtr e = expr();
      expect(")");
      return make_unary(UnaryOp::kSqrt, e);
    }
    if (kReserved.count(t.text) != 0) {
      fail(t, "'" + t.text + "' is a reserved word");
    }
    const Token name = next();
    if (is_punct("(")) {
      return make_leaf(leaf_after_name(name));
    }
    auto it = decls_.find(name.text);
    if (it == decls_.end()) {
      fail(name, "undeclared name '" + name.text + "'", ErrorCode::kUnknownName);
    }
    if (const auto* c = std::get_if<ConstDecl>(&it->second)) {
      return make_const(c->value, name.text);
    }
    if (std::holds_alternative<ScalarFieldDecl>(it->second)) {
      return make_scalar_field(name.text);
    }
    fail(name, "tensor '" + name.text + "' must be indexed", ErrorCode::kKindMismatch);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  Program program_;
  Declarations decls_;
  std::map<std::string, IndexVar> indices_;
  std::set<std::string> declared_indices_;
};

// --- rendering ---------------------------------------------------------------

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return (b->op == BinaryOp::kAdd || b->op == BinaryOp::kSub) ? 1 : 2;
  }
  if (const auto* u = std::get_if<Unary>(&e.node)) {
    return u->op == UnaryOp::kNeg ? 3 : 4;
  }
  return 4;
}

std::string render_terms(const std::vector<IndexTerm>& terms) {
  std::string out;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (n > 0) out += ", ";
    if (const auto* v = terms[n].as_var()) {
      out += v->var.name;
      if (v->offset != 0) out += "+" + std::to_string(v->offset);
    } else {
      out += std::to_string(std::get<IndexTerm::Fixed>(terms[n].term).value);
    }
  }
  return out;
}

std::string render_leaf(const TensorLeaf& leaf) {
  std::string out = leaf.field + "(";
  if (leaf.declared_sym && !leaf.declared_sym->empty()) {
    const auto& pairs = leaf.declared_sym->pairs();
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      if (n > 0) out += " && ";
      out += "sym<" + std::to_string(pairs[n].first) + "," +
             std::to_string(pairs[n].second) + ">";
    }
    out += ", ";
  }
  out += render_terms(leaf.outer) + ")";
  if (!leaf.inner.empty()) out += "(" + render_terms(leaf.inner) + ")";
  return out;
}

std::string render_sym_decl(const SymmetrySpec& s) {
  std::string out;
  for (const Inequality& q : s.pairs()) {
    out += " sym(" + std::to_string(q.first) + "," + std::to_string(q.second) + ")";
  }
  return out;
}

}  // namespace

std::string format_diagnostic(std::string_view file, const Diagnostic& d) {
  std::ostringstream os;
  os << file << ":" << d.loc.line << ":" << d.loc.column << ": " << d.message;
  return os.str();
}

Declarations Program::declaration_map() const {
  Declarations out;
  for (const Declaration& d : declarations) out.emplace(d.name, d.decl);
  return out;
}

const Declaration* Program::find(const std::string& name) const {
  for (const Declaration& d : declarations) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

ParseResult parse_program(std::string_view text) {
  return Parser(text).run();
}

const std::vector<IndexVar>& builtin_indices() {
  static const std::vector<IndexVar> kBuiltins = {
      {"i", 3}, {"j", 3}, {"k", 3}, {"l", 3}, {"m", 3}, {"n", 3},
      {"o", 3}, {"a", 4}, {"b", 4}, {"c", 4}, {"d", 4}};
  return kBuiltins;
}

std::string render(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TensorLeaf>) {
          return render_leaf(n);
        } else if constexpr (std::is_same_v<T, ScalarConst>) {
          return n.name.empty() ? format_number(n.value) : n.name;
        } else if constexpr (std::is_same_v<T, ScalarFieldRef>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int p = precedence(e);
          std::string l = render(*n.lhs);
          std::string r = render(*n.rhs);
          if (precedence(*n.lhs) < p) l = "(" + l + ")";
          if (precedence(*n.rhs) <= p) r = "(" + r + ")";
          static constexpr const char* kOps[] = {" + ", " - ", " * ", " / "};
          return l + kOps[static_cast<int>(n.op)] + r;
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (n.op == UnaryOp::kSqrt) return "sqrt(" + render(*n.operand) + ")";
          std::string o = render(*n.operand);
          if (precedence(*n.operand) < 3) o = "(" + o + ")";
          return "-" + o;
        } else {
          return "Sum(" + n.var.name + ", " + render(*n.body) + ")";
        }
      },
      e.node);
}

std::string render(const Statement& s) {
  return render_leaf(s.lhs) + " " + std::string(assign_op_token(s.op)) + " " +
         render(*s.rhs) + ";";
}

std::string render(const Program& p) {
  std::string out;
  for (const IndexDecl& d : p.indices) {
    out += "index " + d.var.name + " : " + std::to_string(d.var.dim) + ";\n";
  }
  for (const Declaration& d : p.declarations) {
    std::visit(
        [&](const auto& decl) {
          using T = std::decay_t<decltype(decl)>;
          if constexpr (std::is_same_v<T, TensorDecl>) {
            out += "tensor " + d.name + " dim " + std::to_string(decl.shape.dim) +
                   " rank " + std::to_string(decl.shape.outer_rank) +
                   render_sym_decl(decl.shape.outer_sym);
            if (decl.shape.inner_rank > 0) {
              out += " inner rank " + std::to_string(decl.shape.inner_rank) +
                     render_sym_decl(decl.shape.inner_sym);
            }
            out += ";\n";
          } else if constexpr (std::is_same_v<T, ScalarFieldDecl>) {
            out += "field " + d.name + ";\n";
          } else {
            out += "const " + d.name + " = " + format_number(decl.value) + ";\n";
          }
        },
        d.decl);
  }
  for (const Statement& s : p.statements) out += render(s) + "\n";
  return out;
}

ValidatedProgram validate_program(const Program& p) {
  ValidatedProgram out;
  const Declarations decls = p.declaration_map();
  for (const Statement& s : p.statements) {
    try {
      out.statements.push_back(validate_statement(s, decls));
    } catch (const Error& e) {
      out.diagnostics.push_back(
          {s.loc, "error[" + std::string(error_code_name(e.code())) + "]: " + e.what()});
    }
  }
  return out;
}

ValidatedProgram compile_program(std::string_view text, std::string_view file) {
  ParseResult parsed = parse_program(text);
  std::vector<Diagnostic> diags = parsed.diagnostics;
  ValidatedProgram out;
  if (parsed.ok()) {
    out = validate_program(parsed.program);
    diags = out.diagnostics;
  }
  if (!diags.empty()) {
    std::string msg;
    for (const Diagnostic& d : diags) {
      if (!msg.empty()) msg += "\n";
      msg += format_diagnostic(file, d);
    }
    throw Error(ErrorCode::kParse, msg);
  }
  return out;
}

}  // namespace tloops
