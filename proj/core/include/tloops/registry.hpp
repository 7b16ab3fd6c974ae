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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tloops/analysis.hpp"

namespace tloops {

enum class Backend { kC, kCuda, kBoth };

std::optional<Backend> parse_backend(std::string_view text);  // c, cuda, both

struct RegistryEntry {
  int ordinal = 0;
  std::string signature;
  ValidatedStatement statement;
  DataCount count;
};

/// Unique statements keyed by signature. Ordinals are 1-based and follow
/// first registration. Not synchronized: callers serialize add().
class Registry {
 public:
  // Returns the existing ordinal when the signature is already present.
  int add(const ValidatedStatement& s);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
  const RegistryEntry* find(std::string_view signature) const;

 private:
  std::vector<RegistryEntry> entries_;
  std::map<std::string, int, std::less<>> by_signature_;
};

inline constexpr std::string_view kManifestFile = "tloops_manifest.tsv";
inline constexpr std::string_view kArgumentsFile = "tloops_arguments.tsv";
inline constexpr std::string_view kHeaderFile = "tloops_kernels.h";

/// File name -> contents, in emission order. Per backend: dispatch,
/// bindings and kernels sources (plus the pointer cache for CUDA); always
/// the shared header and the two manifests.
using FileSet = std::vector<std::pair<std::string, std::string>>;

FileSet render_files(const Registry& registry, Backend backend);

/// Write render_files() into `dir`, creating it if needed. Throws
/// Error(kInvalidArgument) for an empty registry and Error(kIo) naming the
/// path on any write failure. Returns the written paths.
std::vector<std::filesystem::path> write_all(const Registry& registry,
                                             const std::filesystem::path& dir,
                                             Backend backend);

/// `ordinal<TAB>signature<TAB>N_e<TAB>N_d` per entry.
std::string render_manifest(const Registry& registry);

}  // namespace tloops
