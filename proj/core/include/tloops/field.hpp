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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tloops/symmetry.hpp"

namespace tloops {

/// Dimension, ranks and symmetries of a tensor field. The optional inner
/// group models nested tensors such as dg(i,j)(k); both groups share `dim`.
struct TensorShape {
  int dim = 3;
  int outer_rank = 0;
  SymmetrySpec outer_sym;
  int inner_rank = 0;
  SymmetrySpec inner_sym;

  IndexGroup outer() const { return {dim, outer_rank, outer_sym}; }
  IndexGroup inner() const { return {dim, inner_rank, inner_sym}; }
  int total_rank() const noexcept { return outer_rank + inner_rank; }

  // Throws a shape error when the description is inconsistent.
  void validate() const;

  // Same dimension, ranks and symmetry classes.
  bool equivalent(const TensorShape& other) const;

  bool operator==(const TensorShape&) const = default;
};

/// Slot arithmetic for a whole shape: storage slot = outer * inner_count +
/// inner, and a flattened index over outer++inner slots (slot 0 fastest)
/// for the full D^rank component-pointer arrays used by generated code.
class ShapeLayout {
 public:
  explicit ShapeLayout(const TensorShape& shape);

  const TensorShape& shape() const noexcept { return shape_; }
  const GroupLayout& outer() const noexcept { return outer_; }
  const GroupLayout& inner() const noexcept { return inner_; }

  int component_count() const noexcept {
    return outer_.component_count() * inner_.component_count();
  }
  int slot(std::span<const int> outer_idx, std::span<const int> inner_idx) const;

  std::size_t flat_size() const noexcept {
    return outer_.flat_size() * inner_.flat_size();
  }
  // Storage slot for a flattened full index.
  int slot_of_flat(std::size_t flat) const;

 private:
  TensorShape shape_;
  GroupLayout outer_;
  GroupLayout inner_;
};

/// Gridded tensor data: one array of N doubles per canonical component.
/// Non-canonical index tuples resolve to the storage of their canonical image.
class TensorField {
 public:
  TensorField(std::string name, const TensorShape& shape,
              std::size_t gridsize = 0);

  const std::string& name() const noexcept { return name_; }
  const TensorShape& shape() const noexcept { return layout_->shape(); }
  const ShapeLayout& layout() const noexcept { return *layout_; }
  std::size_t gridsize() const noexcept { return gridsize_; }
  int component_count() const noexcept {
    return static_cast<int>(data_.size());
  }

  std::span<double> component(std::span<const int> outer,
                              std::span<const int> inner = {});
  std::span<const double> component(std::span<const int> outer,
                                    std::span<const int> inner = {}) const;

  std::span<double> slot(int s);
  std::span<const double> slot(int s) const;

  // Zero-filled resize of every component.
  void resize(std::size_t gridsize);

 private:
  std::string name_;
  std::shared_ptr<const ShapeLayout> layout_;
  std::size_t gridsize_ = 0;
  std::vector<std::vector<double>> data_;
};

/// One double per grid point.
struct ScalarField {
  std::string name;
  std::vector<double> values;

  std::size_t gridsize() const noexcept { return values.size(); }
};

/// A bare number.
struct Constant {
  std::string name;
  double value = 0.0;
};

using Field = std::variant<Constant, ScalarField, TensorField>;

const std::string& field_name(const Field& f);

/// Named fields in insertion order.
class FieldStore {
 public:
  // Replaces an existing field of the same name in place.
  Field& put(Field field);

  Field* find(const std::string& name);
  const Field* find(const std::string& name) const;

  TensorField& tensor(const std::string& name);
  const TensorField& tensor(const std::string& name) const;
  ScalarField& scalar(const std::string& name);
  const ScalarField& scalar(const std::string& name) const;

  const std::vector<Field>& fields() const noexcept { return fields_; }
  std::size_t size() const noexcept { return fields_.size(); }

 private:
  std::vector<Field> fields_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace tloops
