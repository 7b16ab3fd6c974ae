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

#include <string>
#include <string_view>
#include <vector>

#include "tloops/analysis.hpp"
#include "tloops/expr.hpp"

namespace tloops {

struct Diagnostic {
  SourceLoc loc;
  std::string message;
};

// `file:line:col: message`
std::string format_diagnostic(std::string_view file, const Diagnostic& d);

/// `tensor`, `field` or `const` declaration.
struct Declaration {
  std::string name;
  FieldDecl decl;
  SourceLoc loc;
};

struct IndexDecl {
  IndexVar var;
  SourceLoc loc;
};

struct Program {
  std::vector<IndexDecl> indices;
  std::vector<Declaration> declarations;
  std::vector<Statement> statements;

  Declarations declaration_map() const;
  const Declaration* find(const std::string& name) const;
};

struct ParseResult {
  Program program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return diagnostics.empty(); }
};

inline constexpr std::size_t kMaxDiagnostics = 20;

/// Parse `.tl` source. Never throws on malformed input; the first error is
/// reported with its position and parsing resumes after the next `;`, up to
/// kMaxDiagnostics diagnostics.
ParseResult parse_program(std::string_view text);

/// Built-in indices: i j k l m n o (dim 3), a b c d (dim 4).
const std::vector<IndexVar>& builtin_indices();

/// Pretty-printers; the output parses back to the same structure.
std::string render(const Expr& e);
std::string render(const Statement& s);
std::string render(const Program& p);

struct ValidatedProgram {
  std::vector<ValidatedStatement> statements;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return diagnostics.empty(); }
};

/// Run validate_statement on every statement, collecting diagnostics.
ValidatedProgram validate_program(const Program& p);

/// Parse and validate in one step; throws Error(kParse) with the formatted
/// diagnostics when anything is wrong. Convenient for tests and fixtures.
ValidatedProgram compile_program(std::string_view text,
                                 std::string_view file = "<input>");

}  // namespace tloops
