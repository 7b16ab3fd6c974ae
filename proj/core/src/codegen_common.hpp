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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tloops/analysis.hpp"
#include "tloops/codegen_c.hpp"

namespace tloops::detail {

/// Parameter names for the nodes of one statement.
struct ParamMap {
  std::vector<ArgumentSpec> args;                    // manifest order
  std::map<std::string, std::string> tensor;         // field -> R<k>
  std::map<std::string, std::string> scalar;         // field -> F<k>
  std::map<const Expr*, std::string> constant;       // node -> d<k>
};

ParamMap collect_params(const ValidatedStatement& s);

/// C identifiers for every index variable of the statement, renamed away
/// from keywords and the names the generated code itself uses.
std::map<std::string, std::string> index_identifiers(const ValidatedStatement& s);

/// Flattened component index: variable parts then the folded constant,
/// e.g. "i + 4*c + 1".
std::string flat_index(const TensorLeaf& leaf, int dim,
                       const std::map<std::string, std::string>& names);

/// Render an expression with C precedence, keeping the tree's association.
/// `atom` renders leaves, constants, scalar fields and sums.
std::string render_c(const Expr& e,
                     const std::function<std::string(const Expr&)>& atom);

std::string ordinal_text(int ordinal);  // 0001

std::string indent(int depth);

}  // namespace tloops::detail
