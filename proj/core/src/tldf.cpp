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

#include "tloops/tldf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "tloops/error.hpp"

namespace tloops {
namespace {

static_assert(std::endian::native == std::endian::little,
              "TLDF encoding assumes a little-endian host");

class Writer {
 public:
  template <class T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void bytes(std::string_view s) { out_.append(s); }
  void doubles(std::span<const double> v) {
    out_.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  template <class T>
  T get(const char* what) {
    need(sizeof(T), what);
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string_view bytes(std::size_t n, const char* what) {
    need(n, what);
    std::string_view s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  void doubles(std::span<double> out, const char* what) {
    const std::size_t n = out.size() * sizeof(double);
    need(n, what);
    std::memcpy(out.data(), in_.data() + pos_, n);
    pos_ += n;
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  std::size_t offset() const { return pos_; }

 private:
  void need(std::size_t n, const char* what) const {
    if (in_.size() - pos_ < n) {
      throw Error(ErrorCode::kFormat, "truncated TLDF data at byte " +
                                          std::to_string(pos_) + " reading " + what);
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void put_sym(Writer& w, const SymmetrySpec& s) {
  w.put<std::uint8_t>(static_cast<std::uint8_t>(s.pairs().size()));
  for (const Inequality& q : s.pairs()) {
    w.put<std::uint8_t>(static_cast<std::uint8_t>(q.first));
    w.put<std::uint8_t>(static_cast<std::uint8_t>(q.second));
  }
}

SymmetrySpec get_sym(Reader& r) {
  const int count = r.get<std::uint8_t>("pair count");
  std::vector<Inequality> pairs;
  for (int n = 0; n < count; ++n) {
    const int a = r.get<std::uint8_t>("pair");
    const int b = r.get<std::uint8_t>("pair");
    pairs.push_back({a, b});
  }
  return SymmetrySpec(std::move(pairs));
}

}  // namespace

std::string encode_tldf(const FieldStore& store) {
  Writer w;
  w.bytes(kTldfMagic);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(store.size()));
  for (const Field& f : store.fields()) {
    const std::string& name = field_name(f);
    if (name.size() > 0xffff) {
      throw Error(ErrorCode::kInvalidArgument, "field name too long: " + name);
    }
    w.put<std::uint16_t>(static_cast<std::uint16_t>(name.size()));
    w.bytes(name);
    if (const auto* c = std::get_if<Constant>(&f)) {
      w.put<std::uint8_t>(0);
      w.put<double>(c->value);
    } else if (const auto* s = std::get_if<ScalarField>(&f)) {
      w.put<std::uint8_t>(1);
      for (int n = 0; n < 5; ++n) w.put<std::uint8_t>(0);
      w.put<std::uint64_t>(s->values.size());
      w.doubles(s->values);
    } else {
      const auto& t = std::get<TensorField>(f);
      const TensorShape& shape = t.shape();
      w.put<std::uint8_t>(2);
      w.put<std::uint8_t>(static_cast<std::uint8_t>(shape.dim));
      w.put<std::uint8_t>(static_cast<std::uint8_t>(shape.outer_rank));
      w.put<std::uint8_t>(static_cast<std::uint8_t>(shape.inner_rank));
      put_sym(w, shape.outer_sym);
      put_sym(w, shape.inner_sym);
      w.put<std::uint64_t>(t.gridsize());
      for (int s = 0; s < t.component_count(); ++s) w.doubles(t.slot(s));
    }
  }
  return w.take();
}

FieldStore decode_tldf(std::string_view bytes) {
  Reader r(bytes);
  if (r.remaining() < kTldfMagic.size() ||
      r.bytes(kTldfMagic.size(), "magic") != kTldfMagic) {
    throw Error(ErrorCode::kFormat, "not a TLDF file (bad magic)");
  }
  FieldStore store;
  const std::uint32_t count = r.get<std::uint32_t>("field count");
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint16_t len = r.get<std::uint16_t>("name length");
    std::string name(r.bytes(len, "name"));
    if (store.find(name) != nullptr) {
      throw Error(ErrorCode::kFormat, "duplicate field '" + name + "'");
    }
    const std::uint8_t kind = r.get<std::uint8_t>("kind");
    if (kind == 0) {
      store.put(Constant{name, r.get<double>("constant")});
      continue;
    }
    if (kind > 2) {
      throw Error(ErrorCode::kFormat,
                  "field '" + name + "' has unknown kind " + std::to_string(kind));
    }
    TensorShape shape;
    try {
      shape.dim = r.get<std::uint8_t>("dim");
      shape.outer_rank = r.get<std::uint8_t>("outer rank");
      shape.inner_rank = r.get<std::uint8_t>("inner rank");
      shape.outer_sym = get_sym(r);
      shape.inner_sym = get_sym(r);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kFormat) throw;
      throw Error(ErrorCode::kFormat, "field '" + name + "': " + e.what());
    }
    const std::uint64_t n = r.get<std::uint64_t>("gridsize");
    if (n > r.remaining() / sizeof(double)) {
      throw Error(ErrorCode::kFormat, "truncated TLDF data: field '" + name +
                                          "' declares gridsize " + std::to_string(n));
    }
    if (kind == 1) {
      if (shape.dim != 0 || shape.total_rank() != 0 || !shape.outer_sym.empty() ||
          !shape.inner_sym.empty()) {
        throw Error(ErrorCode::kFormat,
                    "scalar field '" + name + "' must have dim 0 and no ranks");
      }
      ScalarField s{name, std::vector<double>(n)};
      r.doubles(s.values, "scalar data");
      store.put(std::move(s));
      continue;
    }
    try {
      shape.validate();
      if (shape.total_rank() == 0) {
        throw Error(ErrorCode::kShape, "tensor rank must be at least 1");
      }
      // Bound the allocation by what the payload can actually hold.
      ShapeLayout layout(shape);
      if (n > 0 && static_cast<std::uint64_t>(layout.component_count()) >
                       r.remaining() / sizeof(double) / n) {
        throw Error(ErrorCode::kFormat, "truncated TLDF data in field '" + name + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kFormat) throw;
      throw Error(ErrorCode::kFormat, "field '" + name + "': " + e.what());
    }
    TensorField t(name, shape, n);
    for (int s = 0; s < t.component_count(); ++s) r.doubles(t.slot(s), "tensor data");
    store.put(std::move(t));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kFormat,
                "trailing bytes after TLDF payload at byte " + std::to_string(r.offset()));
  }
  return store;
}

FieldStore read_tldf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_tldf(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_tldf(const std::filesystem::path& path, const FieldStore& store) {
  const std::string bytes = encode_tldf(store);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace tloops
