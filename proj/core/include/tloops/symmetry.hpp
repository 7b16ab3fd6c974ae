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

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace tloops {

using MultiIndex = std::vector<int>;

/// A symmetric pair of slot positions. In canonical storage the value at
/// `first` is greater than or equal to the value at `second`.
struct Inequality {
  int first = 0;
  int second = 0;

  auto operator<=>(const Inequality&) const = default;
};

/// Set of inequalities describing which slots of one index group may be
/// exchanged. Pairs satisfy first < second and are kept in strictly
/// increasing lexicographic order.
///
/// Slots joined by a chain of pairs form a class that is fully symmetric,
/// so {(0,1),(1,2)} and {(0,1),(0,2)} describe the same storage. The chain
/// form produced by normalized() is what loop nests are built from.
class SymmetrySpec {
 public:
  SymmetrySpec() = default;
  explicit SymmetrySpec(std::vector<Inequality> pairs);

  const std::vector<Inequality>& pairs() const noexcept { return pairs_; }
  bool empty() const noexcept { return pairs_.empty(); }

  // Largest position mentioned, or -1 when empty.
  int max_position() const noexcept;

  // Throws a shape error if any position is >= rank.
  void check_rank(int rank) const;

  // Symmetry classes over positions [0, rank), each sorted ascending.
  // Singletons are included; classes are ordered by their first position.
  std::vector<std::vector<int>> classes(int rank) const;

  // Chain form: consecutive pairs (p_k, p_{k+1}) within each class.
  SymmetrySpec normalized(int rank) const;

  // Restrict to the positions with keep[p] == true and renumber the kept
  // positions densely. Classes lose their dropped members.
  SymmetrySpec restricted(const std::vector<bool>& keep) const;

  // Same classes over [0, rank).
  bool equivalent(const SymmetrySpec& other, int rank) const;

  bool operator==(const SymmetrySpec&) const = default;

 private:
  std::vector<Inequality> pairs_;
};

/// Sort values in non-increasing order within each symmetry class.
MultiIndex canonicalize(const SymmetrySpec& sym, std::span<const int> idx);

/// One index group of a tensor: `rank` slots, each ranging over [0, dim).
struct IndexGroup {
  int dim = 1;
  int rank = 0;
  SymmetrySpec sym;
};

/// Lookup table for one index group. Canonical slots are numbered in
/// odometer order with slot 0 varying fastest.
class GroupLayout {
 public:
  explicit GroupLayout(IndexGroup group);

  const IndexGroup& group() const noexcept { return group_; }
  int component_count() const noexcept {
    return static_cast<int>(representatives_.size());
  }
  std::size_t flat_size() const noexcept { return slot_of_flat_.size(); }

  // Odometer position i0 + D*i1 + D^2*i2 ...; throws on out-of-range values.
  std::size_t flat_index(std::span<const int> idx) const;
  int slot_index(std::span<const int> idx) const;
  int slot_of_flat(std::size_t flat) const { return slot_of_flat_[flat]; }
  const MultiIndex& representative(int slot) const {
    return representatives_[static_cast<std::size_t>(slot)];
  }

 private:
  IndexGroup group_;
  std::vector<int> slot_of_flat_;
  std::vector<MultiIndex> representatives_;
};

int slot_index(const IndexGroup& group, std::span<const int> idx);
int component_count(const IndexGroup& group);

/// Visit the canonical index assignments of a loop nest. Slot rank-1 is the
/// outermost loop and slot 0 the innermost; slot p starts at the value of
/// the slot it is chained to (if any), else 0, and runs to dims[p]-1.
template <class Visitor>
void for_each_index(std::span<const int> dims, const SymmetrySpec& sym,
                    Visitor&& visit);

std::vector<MultiIndex> iterate(std::span<const int> dims,
                                const SymmetrySpec& sym);

// Per-slot lower-bound partner in chain form (or -1), as used by loop nests.
std::vector<int> lower_bound_partners(const SymmetrySpec& sym, int rank);

namespace detail {

template <class Visitor>
void visit_slots(int p, std::span<const int> dims,
                 const std::vector<int>& partner, MultiIndex& idx,
                 Visitor& visit) {
  if (p < 0) {
    visit(static_cast<const MultiIndex&>(idx));
    return;
  }
  const auto ps = static_cast<std::size_t>(p);
  const int start = partner[ps] < 0 ? 0 : idx[static_cast<std::size_t>(partner[ps])];
  for (int v = start; v < dims[ps]; ++v) {
    idx[ps] = v;
    visit_slots(p - 1, dims, partner, idx, visit);
  }
}

}  // namespace detail

template <class Visitor>
void for_each_index(std::span<const int> dims, const SymmetrySpec& sym,
                    Visitor&& visit) {
  const int rank = static_cast<int>(dims.size());
  const std::vector<int> partner = lower_bound_partners(sym, rank);
  MultiIndex idx(dims.size(), 0);
  detail::visit_slots(rank - 1, dims, partner, idx, visit);
}

}  // namespace tloops
