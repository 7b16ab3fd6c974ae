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

#include "tloops/field.hpp"

#include <string>
#include <type_traits>

#include "tloops/error.hpp"

namespace tloops {

void TensorShape::validate() const {
  if (dim <= 0 || dim > 255) {
    throw Error(ErrorCode::kShape,
                "dimension must be in [1, 255], got " + std::to_string(dim));
  }
  if (outer_rank < 0 || inner_rank < 0 || outer_rank > 255 || inner_rank > 255) {
    throw Error(ErrorCode::kShape, "rank out of range");
  }
  outer_sym.check_rank(outer_rank);
  inner_sym.check_rank(inner_rank);
}

bool TensorShape::equivalent(const TensorShape& other) const {
  return dim == other.dim && outer_rank == other.outer_rank &&
         inner_rank == other.inner_rank &&
         outer_sym.equivalent(other.outer_sym, outer_rank) &&
         inner_sym.equivalent(other.inner_sym, inner_rank);
}

ShapeLayout::ShapeLayout(const TensorShape& shape)
    : shape_((shape.validate(), shape)),
      outer_(shape.outer()),
      inner_(shape.inner()) {}

int ShapeLayout::slot(std::span<const int> outer_idx,
                      std::span<const int> inner_idx) const {
  return outer_.slot_index(outer_idx) * inner_.component_count() +
         inner_.slot_index(inner_idx);
}

int ShapeLayout::slot_of_flat(std::size_t flat) const {
  const std::size_t outer_flat = flat % outer_.flat_size();
  const std::size_t inner_flat = flat / outer_.flat_size();
  return outer_.slot_of_flat(outer_flat) * inner_.component_count() +
         inner_.slot_of_flat(inner_flat);
}

TensorField::TensorField(std::string name, const TensorShape& shape,
                         std::size_t gridsize)
    : name_(std::move(name)),
      layout_(std::make_shared<const ShapeLayout>(shape)),
      gridsize_(gridsize),
      data_(static_cast<std::size_t>(layout_->component_count()),
            std::vector<double>(gridsize, 0.0)) {}

std::span<double> TensorField::component(std::span<const int> outer,
                                         std::span<const int> inner) {
  return data_[static_cast<std::size_t>(layout_->slot(outer, inner))];
}

std::span<const double> TensorField::component(
    std::span<const int> outer, std::span<const int> inner) const {
  return data_[static_cast<std::size_t>(layout_->slot(outer, inner))];
}

std::span<double> TensorField::slot(int s) {
  if (s < 0 || s >= component_count()) {
    throw Error(ErrorCode::kIndexRange, "component slot " + std::to_string(s) +
                                            " out of range in " + name_);
  }
  return data_[static_cast<std::size_t>(s)];
}

std::span<const double> TensorField::slot(int s) const {
  if (s < 0 || s >= component_count()) {
    throw Error(ErrorCode::kIndexRange, "component slot " + std::to_string(s) +
                                            " out of range in " + name_);
  }
  return data_[static_cast<std::size_t>(s)];
}

void TensorField::resize(std::size_t gridsize) {
  gridsize_ = gridsize;
  for (auto& c : data_) c.assign(gridsize, 0.0);
}

const std::string& field_name(const Field& f) {
  return std::visit(
      [](const auto& v) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, TensorField>) {
          return v.name();
        } else {
          return v.name;
        }
      },
      f);
}

Field& FieldStore::put(Field field) {
  const std::string name = field_name(field);
  if (auto it = index_.find(name); it != index_.end()) {
    fields_[it->second] = std::move(field);
    return fields_[it->second];
  }
  index_.emplace(name, fields_.size());
  fields_.push_back(std::move(field));
  return fields_.back();
}

Field* FieldStore::find(const std::string& name) {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &fields_[it->second];
}

const Field* FieldStore::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &fields_[it->second];
}

namespace {

template <class T>
T& require(Field* f, const std::string& name, const char* kind) {
  if (f == nullptr) {
    throw Error(ErrorCode::kUnknownName, "no field named '" + name + "'");
  }
  T* v = std::get_if<T>(f);
  if (v == nullptr) {
    throw Error(ErrorCode::kKindMismatch,
                "field '" + name + "' is not a " + kind);
  }
  return *v;
}

}  // namespace

TensorField& FieldStore::tensor(const std::string& name) {
  return require<TensorField>(find(name), name, "tensor");
}

const TensorField& FieldStore::tensor(const std::string& name) const {
  return require<TensorField>(const_cast<Field*>(find(name)), name, "tensor");
}

ScalarField& FieldStore::scalar(const std::string& name) {
  return require<ScalarField>(find(name), name, "scalar field");
}

const ScalarField& FieldStore::scalar(const std::string& name) const {
  return require<ScalarField>(const_cast<Field*>(find(name)), name,
                              "scalar field");
}

}  // namespace tloops
