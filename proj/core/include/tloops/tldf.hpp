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

#include <filesystem>
#include <string>
#include <string_view>

#include "tloops/field.hpp"

namespace tloops {

// Binary field container. Layout, all integers little-endian:
//   "TLDF0001", u32 field count, then per field
//   u16 name length, name bytes, u8 kind (0 const, 1 scalar, 2 tensor)
//   kind 0:    f64 value
//   kind 1, 2: u8 dim (0 for scalars), u8 outer rank, u8 inner rank,
//              u8 outer pair count + (u8,u8) pairs, same for inner,
//              u64 gridsize N, then component arrays of N f64 each in
//              (outer slot major, inner slot minor) order.
inline constexpr std::string_view kTldfMagic = "TLDF0001";

std::string encode_tldf(const FieldStore& store);

// Throws Error(kFormat) on bad magic, truncation, trailing bytes or an
// inconsistent shape. Field order is preserved.
FieldStore decode_tldf(std::string_view bytes);

FieldStore read_tldf(const std::filesystem::path& path);
void write_tldf(const std::filesystem::path& path, const FieldStore& store);

}  // namespace tloops
