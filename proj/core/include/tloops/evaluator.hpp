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

#include <cstddef>
#include <functional>
#include <string>

#include "tloops/analysis.hpp"
#include "tloops/expr.hpp"
#include "tloops/field.hpp"

namespace tloops {

/// Replace every Var(v, off) term by Fixed(value + off) throughout `e`.
ExprPtr substitute(const ExprPtr& e, const std::string& var, int value);

/// Sum(v, body) -> ((body[v:=0] + body[v:=1]) + ...), v.dim terms.
ExprPtr expand_sum(const SumNode& sum);

/// Expand every Sum in `e`, innermost first.
ExprPtr expand_all_sums(const ExprPtr& e);

struct EvalOptions {
  // Worker threads partitioning the grid; 1 runs on the calling thread.
  unsigned threads = 1;
  // Called once for each left-hand side storage slot a statement writes.
  std::function<void(const std::string& field, int slot)> on_write;
};

/// Execute `s` over the fields in `env`. The left-hand side tensor is created
/// (empty) when absent; `=` resizes it to the right-hand side gridsize.
void eval_statement(const ValidatedStatement& s, FieldStore& env,
                    const EvalOptions& opts = {});

/// Same result, bit for bit, computed one left-hand side component at a time
/// from a fully index-substituted scalar expression.
void eval_statement_per_component(const ValidatedStatement& s, FieldStore& env,
                                  const EvalOptions& opts = {});

enum class EvalMode { kWholeTensor, kPerComponent };

std::string_view eval_mode_name(EvalMode mode);  // "whole-tensor", "per-component"

void eval(const ValidatedStatement& s, FieldStore& env, EvalMode mode,
          const EvalOptions& opts = {});

}  // namespace tloops
