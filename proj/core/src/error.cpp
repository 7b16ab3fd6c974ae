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

#include "tloops/error.hpp"

namespace tloops {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kIndexRange: return "index-range";
    case ErrorCode::kIndexMismatch: return "index-mismatch";
    case ErrorCode::kSumVarAbsent: return "sum-variable";
    case ErrorCode::kRepeatedIndex: return "CheckUniqueIndices";
    case ErrorCode::kFreeIndexMismatch: return "CheckIndexEquality";
    case ErrorCode::kSymmetryMismatch: return "CheckSymmetries";
    case ErrorCode::kIndexBounds: return "index-bounds";
    case ErrorCode::kNotScalar: return "not-scalar";
    case ErrorCode::kUnknownName: return "undeclared";
    case ErrorCode::kKindMismatch: return "kind";
    case ErrorCode::kGridsize: return "gridsize";
    case ErrorCode::kParse: return "syntax";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace tloops
