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

namespace tloops {

enum class ArgRole { kLhs, kTensor, kScalarField, kConstant };

std::string_view arg_role_name(ArgRole role);  // "lhs", "tensor", "scalar", "const"

/// One kernel parameter. Tensors are passed as full D^rank component-pointer
/// arrays (outer slots then inner slots, slot 0 fastest) in which symmetric
/// components alias one buffer.
struct ArgumentSpec {
  ArgRole role = ArgRole::kTensor;
  std::string param;  // L, R0.., F0.., d0..
  std::string field;  // empty for literal constants
  TensorShape shape;  // tensors only
  double value = 0.0; // constants only

  bool is_const() const noexcept { return role != ArgRole::kLhs; }
  // Length of the pointer array (tensors), else 1.
  int pointer_count() const;
};

/// Kernel parameters in manifest order: the lhs first, then right-hand side
/// tensors, scalar fields and constants by first occurrence (depth first,
/// left to right). Parameter names are numbered per role in that order.
std::vector<ArgumentSpec> kernel_arguments(const ValidatedStatement& s);

/// The same arguments in call order: L, R*, F*, d*.
std::vector<ArgumentSpec> call_order(const std::vector<ArgumentSpec>& args);

struct GeneratedUnit {
  std::string kernel_name;
  std::string prototype;  // declaration without trailing ';'
  std::string source;
  std::vector<ArgumentSpec> arguments;  // manifest order
};

std::string c_kernel_name(int ordinal);  // tl_0001

/// ISO C99 loop nest for `s`:
///   void tl_NNNN(const long N, double* const* L, const double* const* R0, ...,
///                const double* F0, ..., const double d0, ...)
GeneratedUnit emit_c(const ValidatedStatement& s, int ordinal);

}  // namespace tloops
