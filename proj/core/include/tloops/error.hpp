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

#include <stdexcept>
#include <string>
#include <string_view>

namespace tloops {

// One code per failure class. Each validation check has its own code.
enum class ErrorCode {
  kShape,              // malformed shape or symmetry description
  kIndexRange,         // index value outside [0, dim)
  kIndexMismatch,      // +/- operands with different free-index sets
  kSumVarAbsent,       // Sum over a variable that is not free in its body
  kRepeatedIndex,      // repeated variable on the left-hand side
  kFreeIndexMismatch,  // lhs and rhs free sets differ
  kSymmetryMismatch,   // declared lhs symmetry disagrees with the field
  kIndexBounds,        // index term (with offset) exceeds field dimension
  kNotScalar,          // divisor / sqrt argument / *= and /= rhs carries indices
  kUnknownName,        // undeclared field or index
  kKindMismatch,       // name used as the wrong kind of object
  kGridsize,           // gridsize mismatch or use of an empty field
  kParse,              // lexical or syntactic error
  kFormat,             // malformed TLDF payload
  kIo,                 // file-system failure
  kInvalidArgument,    // bad argument to a library call
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tloops
