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

#include "tloops/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "tloops/error.hpp"

namespace tloops {
namespace {

constexpr std::size_t kMaxFlatSize = std::size_t{1} << 24;

std::string pair_text(const Inequality& q) {
  return "(" + std::to_string(q.first) + "," + std::to_string(q.second) + ")";
}

}  // namespace

SymmetrySpec::SymmetrySpec(std::vector<Inequality> pairs)
    : pairs_(std::move(pairs)) {
  for (std::size_t n = 0; n < pairs_.size(); ++n) {
    const Inequality& q = pairs_[n];
    if (q.first < 0 || q.second < 0) {
      throw Error(ErrorCode::kShape,
                  "symmetry pair " + pair_text(q) + " has a negative position");
    }
    if (q.first >= q.second) {
      throw Error(ErrorCode::kShape, "symmetry pair " + pair_text(q) +
                                         " must satisfy pos1 < pos2");
    }
    if (n > 0 && !(pairs_[n - 1] < q)) {
      throw Error(ErrorCode::kShape,
                  "symmetry pairs must be strictly increasing: " +
                      pair_text(pairs_[n - 1]) + " then " + pair_text(q));
    }
  }
}

int SymmetrySpec::max_position() const noexcept {
  int m = -1;
  for (const Inequality& q : pairs_) m = std::max(m, q.second);
  return m;
}

void SymmetrySpec::check_rank(int rank) const {
  if (max_position() >= rank) {
    throw Error(ErrorCode::kShape,
                "symmetry position " + std::to_string(max_position()) +
                    " out of range for rank " + std::to_string(rank));
  }
}

std::vector<std::vector<int>> SymmetrySpec::classes(int rank) const {
  check_rank(rank);
  std::vector<int> parent(static_cast<std::size_t>(rank));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  for (const Inequality& q : pairs_) {
    const int a = find(q.first);
    const int b = find(q.second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> class_of_root(static_cast<std::size_t>(rank), -1);
  for (int p = 0; p < rank; ++p) {
    const int r = find(p);
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[class_of_root[r]].push_back(p);
  }
  return out;
}

SymmetrySpec SymmetrySpec::normalized(int rank) const {
  std::vector<Inequality> chain;
  for (const auto& cls : classes(rank)) {
    for (std::size_t n = 1; n < cls.size(); ++n) {
      chain.push_back({cls[n - 1], cls[n]});
    }
  }
  std::sort(chain.begin(), chain.end());
  return SymmetrySpec(std::move(chain));
}

SymmetrySpec SymmetrySpec::restricted(const std::vector<bool>& keep) const {
  const int rank = static_cast<int>(keep.size());
  std::vector<int> renumber(keep.size(), -1);
  int next = 0;
  for (int p = 0; p < rank; ++p) {
    if (keep[p]) renumber[p] = next++;
  }
  std::vector<Inequality> chain;
  for (const auto& cls : classes(rank)) {
    int prev = -1;
    for (int p : cls) {
      if (renumber[p] < 0) continue;
      if (prev >= 0) chain.push_back({prev, renumber[p]});
      prev = renumber[p];
    }
  }
  std::sort(chain.begin(), chain.end());
  return SymmetrySpec(std::move(chain));
}

bool SymmetrySpec::equivalent(const SymmetrySpec& other, int rank) const {
  return classes(rank) == other.classes(rank);
}

MultiIndex canonicalize(const SymmetrySpec& sym, std::span<const int> idx) {
  MultiIndex out(idx.begin(), idx.end());
  std::vector<int> values;
  for (const auto& cls : sym.classes(static_cast<int>(idx.size()))) {
    if (cls.size() < 2) continue;
    values.clear();
    for (int p : cls) values.push_back(idx[p]);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t n = 0; n < cls.size(); ++n) out[cls[n]] = values[n];
  }
  return out;
}

GroupLayout::GroupLayout(IndexGroup group) : group_(std::move(group)) {
  if (group_.dim <= 0) {
    throw Error(ErrorCode::kShape, "dimension must be positive, got " +
                                       std::to_string(group_.dim));
  }
  if (group_.rank < 0) {
    throw Error(ErrorCode::kShape, "rank must be non-negative");
  }
  group_.sym.check_rank(group_.rank);

  std::size_t size = 1;
  for (int r = 0; r < group_.rank; ++r) {
    size *= static_cast<std::size_t>(group_.dim);
    if (size > kMaxFlatSize) {
      throw Error(ErrorCode::kShape, "index group too large: dim " +
                                         std::to_string(group_.dim) + " rank " +
                                         std::to_string(group_.rank));
    }
  }

  // Canonical representatives in odometer order, then map every flat
  // position to the slot of its canonical image.
  slot_of_flat_.assign(size, -1);
  const auto classes = group_.sym.classes(group_.rank);
  MultiIndex idx(static_cast<std::size_t>(group_.rank), 0);
  auto is_canonical = [&](const MultiIndex& x) {
    for (const auto& cls : classes) {
      for (std::size_t n = 1; n < cls.size(); ++n) {
        if (x[cls[n - 1]] < x[cls[n]]) return false;
      }
    }
    return true;
  };
  for (std::size_t flat = 0; flat < size; ++flat) {
    if (is_canonical(idx)) {
      slot_of_flat_[flat] = static_cast<int>(representatives_.size());
      representatives_.push_back(idx);
    }
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (++idx[p] < group_.dim) break;
      idx[p] = 0;
    }
  }
  for (std::size_t flat = 0; flat < size; ++flat) {
    if (slot_of_flat_[flat] >= 0) continue;
    // Decode, canonicalize, re-encode.
    std::size_t rest = flat;
    for (auto& v : idx) {
      v = static_cast<int>(rest % static_cast<std::size_t>(group_.dim));
      rest /= static_cast<std::size_t>(group_.dim);
    }
    slot_of_flat_[flat] =
        slot_of_flat_[flat_index(canonicalize(group_.sym, idx))];
  }
}

std::size_t GroupLayout::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != group_.rank) {
    throw Error(ErrorCode::kIndexRange,
                "expected " + std::to_string(group_.rank) + " indices, got " +
                    std::to_string(idx.size()));
  }
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (int v : idx) {
    if (v < 0 || v >= group_.dim) {
      throw Error(ErrorCode::kIndexRange,
                  "index value " + std::to_string(v) + " outside [0, " +
                      std::to_string(group_.dim) + ")");
    }
    flat += static_cast<std::size_t>(v) * stride;
    stride *= static_cast<std::size_t>(group_.dim);
  }
  return flat;
}

int GroupLayout::slot_index(std::span<const int> idx) const {
  return slot_of_flat_[flat_index(idx)];
}

int slot_index(const IndexGroup& group, std::span<const int> idx) {
  return GroupLayout(group).slot_index(idx);
}

int component_count(const IndexGroup& group) {
  return GroupLayout(group).component_count();
}

std::vector<int> lower_bound_partners(const SymmetrySpec& sym, int rank) {
  std::vector<int> partner(static_cast<std::size_t>(rank), -1);
  const SymmetrySpec chain = sym.normalized(rank);
  for (const Inequality& q : chain.pairs()) {
    partner[static_cast<std::size_t>(q.first)] = q.second;
  }
  return partner;
}

std::vector<MultiIndex> iterate(std::span<const int> dims,
                                const SymmetrySpec& sym) {
  std::vector<MultiIndex> out;
  for_each_index(dims, sym, [&](const MultiIndex& idx) { out.push_back(idx); });
  return out;
}

}  // namespace tloops
