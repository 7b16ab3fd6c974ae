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

#include "tloops/registry.hpp"

#include <fstream>
#include <sstream>

#include "codegen_common.hpp"
#include "tloops/codegen_c.hpp"
#include "tloops/codegen_cuda.hpp"
#include "tloops/error.hpp"

namespace tloops {

using namespace detail;

std::optional<Backend> parse_backend(std::string_view text) {
  if (text == "c") return Backend::kC;
  if (text == "cuda") return Backend::kCuda;
  if (text == "both") return Backend::kBoth;
  return std::nullopt;
}

int Registry::add(const ValidatedStatement& s) {
  std::string sig = signature(s);
  if (auto it = by_signature_.find(sig); it != by_signature_.end()) return it->second;
  const int ordinal = static_cast<int>(entries_.size()) + 1;
  entries_.push_back({ordinal, sig, s, count_data(s)});
  by_signature_.emplace(std::move(sig), ordinal);
  return ordinal;
}

const RegistryEntry* Registry::find(std::string_view signature) const {
  auto it = by_signature_.find(signature);
  if (it == by_signature_.end()) return nullptr;
  return &entries_[static_cast<std::size_t>(it->second - 1)];
}

namespace {

constexpr const char* kBanner = "/* Generated by tloopsc. Do not edit. */\n";

std::string sym_text(const SymmetrySpec& s) {
  std::string out;
  for (const Inequality& q : s.pairs()) {
    if (!out.empty()) out += ";";
    out += std::to_string(q.first) + "," + std::to_string(q.second);
  }
  return out.empty() ? "-" : out;
}

std::string comment(const RegistryEntry& e) {
  return "/* " + std::to_string(e.ordinal) + ": " + e.signature + " */\n";
}

std::string args_struct_field(const ArgumentSpec& a) {
  switch (a.role) {
    case ArgRole::kLhs:
      return "double* " + a.param + "[" + std::to_string(a.pointer_count()) + "];";
    case ArgRole::kTensor:
      return "const double* " + a.param + "[" + std::to_string(a.pointer_count()) + "];";
    case ArgRole::kScalarField: return "const double* " + a.param + ";";
    case ArgRole::kConstant: return "double " + a.param + ";";
  }
  return {};
}

std::string call_arguments(const std::vector<ArgumentSpec>& args) {
  std::string out = "a.N";
  for (const ArgumentSpec& a : call_order(args)) out += ", a." + a.param;
  return out;
}

std::string render_header(const Registry& registry) {
  std::ostringstream os;
  os << kBanner;
  os << R"(#ifndef TLOOPS_KERNELS_H
#define TLOOPS_KERNELS_H

#ifdef __cplusplus
extern "C" {
#endif

enum {
  TL_OK = 0,
  TL_MISSING_FIELD = 1,
  TL_SHAPE = 2,
  TL_GRIDSIZE = 3,
  TL_DEVICE_ERROR = 4,
  TL_UNKNOWN_KERNEL = -1,
  TL_NOT_ACCELERATED = -2
};

/* Canonical storage of one field: `ncomponents` arrays of `gridsize`
 * doubles in slot order. A scalar field has one component. Under
 * ACCEL_CUDA the component arrays must be device memory. */
typedef struct tl_field {
  const char* name;
  long gridsize;
  int ncomponents;
  double* const* components;
} tl_field;

#ifndef TL_PTRCACHE_DECLARED
#define TL_PTRCACHE_DECLARED
typedef struct tl_ptrcache {
  const void* owner;
  void** host_copy;
  void** device_array;
  int count;
  int valid;
} tl_ptrcache;
#endif

void** tl_ptrcache_get(tl_ptrcache* cache, const void* owner,
                       void* const* host, int count);

)";
  for (const RegistryEntry& e : registry.entries()) {
    const std::string ord = ordinal_text(e.ordinal);
    const GeneratedUnit c = emit_c(e.statement, e.ordinal);
    const GeneratedUnit g = emit_cuda(e.statement, e.ordinal);
    os << comment(e);
    os << "typedef struct tl_args_" << ord << " {\n  long N;\n";
    for (const ArgumentSpec& a : call_order(c.arguments)) {
      os << "  " << args_struct_field(a) << "\n";
    }
    os << "} tl_args_" << ord << ";\n";
    os << "int tl_bind_" << ord
       << "(const tl_field* fields, int nfields, tl_args_" << ord << "* args);\n";
    os << "int tloops_run_" << ord << "(const tl_field* fields, int nfields);\n";
    os << c.prototype << ";\n";
    os << g.prototype << ";\n\n";
  }
  os << R"(/* Run statement `ordinal` on the named fields. Returns TL_OK or one of
 * the TL_ codes above. */
int tloops_run(int ordinal, const tl_field* fields, int nfields);
int tloops_kernel_count(void);

#ifdef __cplusplus
}
#endif

#endif
)";
  return os.str();
}

std::string map_table(const std::string& name, const ArgumentSpec& a) {
  const ShapeLayout layout(a.shape);
  std::ostringstream os;
  os << "static const int " << name << "[" << layout.flat_size() << "] = {";
  for (std::size_t k = 0; k < layout.flat_size(); ++k) {
    if (k % 16 == 0) os << "\n  ";
    os << layout.slot_of_flat(k);
    if (k + 1 < layout.flat_size()) os << (k % 16 == 15 ? "," : ", ");
  }
  os << "\n};\n";
  return os.str();
}

std::string render_bindings(const Registry& registry) {
  std::ostringstream os;
  os << kBanner;
  os << R"(#include <string.h>

#include "tloops_kernels.h"

static const tl_field* tl_lookup(const tl_field* fields, int nfields,
                                 const char* name)
{
  int k;
  for (k = 0; k < nfields; ++k) {
    if (strcmp(fields[k].name, name) == 0) return &fields[k];
  }
  return NULL;
}

/* Check gridsize agreement; `n` holds the common size or -1. */
static int tl_gridsize(const tl_field* f, long* n)
{
  if (*n >= 0 && f->gridsize != *n) return TL_GRIDSIZE;
  *n = f->gridsize;
  return TL_OK;
}
)";
  for (const RegistryEntry& e : registry.entries()) {
    const std::string ord = ordinal_text(e.ordinal);
    const std::vector<ArgumentSpec> args = kernel_arguments(e.statement);
    os << "\n" << comment(e);
    for (const ArgumentSpec& a : args) {
      if (a.role == ArgRole::kLhs || a.role == ArgRole::kTensor) {
        os << map_table("tl_map_" + ord + "_" + a.param, a);
      }
    }
    os << "\nint tl_bind_" << ord << "(const tl_field* fields, int nfields, tl_args_"
       << ord << "* args)\n{\n";
    os << "  const tl_field* f;\n  long n = -1;\n  int k;\n";
    auto lookup = [&](const ArgumentSpec& a, int count) {
      os << "  f = tl_lookup(fields, nfields, \"" << a.field << "\");\n";
      os << "  if (f == NULL) return TL_MISSING_FIELD;\n";
      os << "  if (f->ncomponents != " << count << ") return TL_SHAPE;\n";
    };
    // Right-hand side inputs fix the gridsize; the lhs must agree.
    for (const ArgumentSpec& a : args) {
      if (a.role == ArgRole::kTensor) {
        lookup(a, ShapeLayout(a.shape).component_count());
        os << "  if (tl_gridsize(f, &n) != TL_OK) return TL_GRIDSIZE;\n";
        os << "  for (k = 0; k < " << a.pointer_count() << "; ++k) args->" << a.param
           << "[k] = f->components[tl_map_" << ord << "_" << a.param << "[k]];\n";
      } else if (a.role == ArgRole::kScalarField) {
        lookup(a, 1);
        os << "  if (tl_gridsize(f, &n) != TL_OK) return TL_GRIDSIZE;\n";
        os << "  args->" << a.param << " = f->components[0];\n";
      } else if (a.role == ArgRole::kConstant) {
        os << "  args->" << a.param << " = " << format_number(a.value) << ";\n";
      }
    }
    const ArgumentSpec& lhs = args.front();
    lookup(lhs, ShapeLayout(lhs.shape).component_count());
    os << "  if (tl_gridsize(f, &n) != TL_OK) return TL_GRIDSIZE;\n";
    os << "  for (k = 0; k < " << lhs.pointer_count() << "; ++k) args->L[k] = "
       << "f->components[tl_map_" << ord << "_L[k]];\n";
    os << "  args->N = n;\n  return TL_OK;\n}\n";
  }
  return os.str();
}

std::string render_dispatch_c(const Registry& registry) {
  std::ostringstream os;
  os << kBanner;
  os << "/* Build with -DACCEL_CPU to route statements to the generated C kernels. */\n";
  os << "#include \"tloops_kernels.h\"\n";
  for (const RegistryEntry& e : registry.entries()) {
    const std::string ord = ordinal_text(e.ordinal);
    const std::vector<ArgumentSpec> args = kernel_arguments(e.statement);
    os << "\n" << comment(e);
    os << "int tloops_run_" << ord << "(const tl_field* fields, int nfields)\n{\n";
    os << "#if defined(ACCEL_CPU)\n";
    os << "  tl_args_" << ord << " a;\n";
    os << "  const int rc = tl_bind_" << ord << "(fields, nfields, &a);\n";
    os << "  if (rc != TL_OK) return rc;\n";
    os << "  " << c_kernel_name(e.ordinal) << "(" << call_arguments(args) << ");\n";
    os << "  return TL_OK;\n";
    os << "#else\n  (void)fields;\n  (void)nfields;\n  return TL_NOT_ACCELERATED;\n#endif\n}\n";
  }
  return os.str();
}

std::string render_dispatch_cuda(const Registry& registry) {
  std::ostringstream os;
  os << kBanner;
  os << "/* Build with -DACCEL_CUDA to route statements to the generated kernels. */\n";
  os << "#include \"tloops_kernels.h\"\n";
  for (const RegistryEntry& e : registry.entries()) {
    const std::string ord = ordinal_text(e.ordinal);
    const std::vector<ArgumentSpec> args = call_order(kernel_arguments(e.statement));
    os << "\n" << comment(e);
    os << "#if defined(ACCEL_CUDA)\n";
    for (const ArgumentSpec& a : args) {
      if (a.role == ArgRole::kLhs || a.role == ArgRole::kTensor) {
        os << "static tl_ptrcache tl_cache_" << ord << "_" << a.param << ";\n";
      }
    }
    os << "#endif\n\n";
    os << "int tloops_run_" << ord << "(const tl_field* fields, int nfields)\n{\n";
    os << "#if defined(ACCEL_CUDA)\n";
    os << "  tl_args_" << ord << " a;\n";
    os << "  const int rc = tl_bind_" << ord << "(fields, nfields, &a);\n";
    os << "  if (rc != TL_OK) return rc;\n";
    std::string call = "a.N";
    std::string check;
    for (const ArgumentSpec& a : args) {
      if (a.role == ArgRole::kLhs || a.role == ArgRole::kTensor) {
        const std::string type = a.role == ArgRole::kLhs ? "double* const*" : "const double* const*";
        os << "  " << type << " d" << a.param << " = (" << type << ")tl_ptrcache_get(&tl_cache_"
           << ord << "_" << a.param << ", fields, (void* const*)a." << a.param << ", "
           << a.pointer_count() << ");\n";
        check += (check.empty() ? "" : " || ") + ("d" + a.param) + " == NULL";
        call += ", d" + a.param;
      } else {
        call += ", a." + a.param;
      }
    }
    os << "  if (" << check << ") return TL_DEVICE_ERROR;\n";
    os << "  return " << cuda_wrapper_name(e.ordinal) << "(" << call
       << ") == 0 ? TL_OK : TL_GRIDSIZE;\n";
    os << "#else\n  (void)fields;\n  (void)nfields;\n  return TL_NOT_ACCELERATED;\n#endif\n}\n";
  }
  return os.str();
}

std::string render_router(const Registry& registry) {
  std::ostringstream os;
  os << "\nint tloops_run(int ordinal, const tl_field* fields, int nfields)\n{\n";
  os << "  switch (ordinal) {\n";
  for (const RegistryEntry& e : registry.entries()) {
    os << "    case " << e.ordinal << ": return tloops_run_" << ordinal_text(e.ordinal)
       << "(fields, nfields);\n";
  }
  os << "    default: return TL_UNKNOWN_KERNEL;\n  }\n}\n";
  os << "\nint tloops_kernel_count(void) { return " << registry.size() << "; }\n";
  return os.str();
}

std::string render_kernels_c(const Registry& registry) {
  std::ostringstream os;
  os << kBanner << "#include <math.h>\n\n#include \"tloops_kernels.h\"\n";
  for (const RegistryEntry& e : registry.entries()) {
    os << "\n" << emit_c(e.statement, e.ordinal).source;
  }
  return os.str();
}

std::string render_kernels_cuda(const Registry& registry) {
  std::ostringstream os;
  os << kBanner << "#include \"tloops_kernels.h\"\n";
  for (const RegistryEntry& e : registry.entries()) {
    os << "\n" << emit_cuda(e.statement, e.ordinal).source;
  }
  return os.str();
}

std::string render_arguments(const Registry& registry) {
  std::ostringstream os;
  os << "# ordinal\tparam\trole\tfield\tdim\touter_rank\tinner_rank\touter_sym\t"
        "inner_sym\tpointers\tvalue\n";
  for (const RegistryEntry& e : registry.entries()) {
    for (const ArgumentSpec& a : kernel_arguments(e.statement)) {
      const bool tensor = a.role == ArgRole::kLhs || a.role == ArgRole::kTensor;
      os << e.ordinal << "\t" << a.param << "\t" << arg_role_name(a.role) << "\t"
         << (a.field.empty() ? "-" : a.field) << "\t";
      if (tensor) {
        os << a.shape.dim << "\t" << a.shape.outer_rank << "\t" << a.shape.inner_rank
           << "\t" << sym_text(a.shape.outer_sym) << "\t" << sym_text(a.shape.inner_sym)
           << "\t" << a.pointer_count() << "\t-\n";
      } else {
        os << "-\t-\t-\t-\t-\t1\t"
           << (a.role == ArgRole::kConstant ? format_number(a.value) : "-") << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace

std::string render_manifest(const Registry& registry) {
  std::ostringstream os;
  for (const RegistryEntry& e : registry.entries()) {
    os << e.ordinal << "\t" << e.signature << "\t" << e.count.elements << "\t"
       << e.count.doubles << "\n";
  }
  return os.str();
}

FileSet render_files(const Registry& registry, Backend backend) {
  FileSet files;
  files.emplace_back(kHeaderFile, render_header(registry));
  if (backend == Backend::kC || backend == Backend::kBoth) {
    files.emplace_back("tloops_dispatch.c", render_dispatch_c(registry) + render_router(registry));
    files.emplace_back("tloops_bindings.c", render_bindings(registry));
    files.emplace_back("tloops_kernels.c", render_kernels_c(registry));
  }
  if (backend == Backend::kCuda || backend == Backend::kBoth) {
    files.emplace_back("tloops_dispatch.cu",
                       render_dispatch_cuda(registry) + render_router(registry));
    files.emplace_back("tloops_bindings.cu", render_bindings(registry));
    files.emplace_back("tloops_kernels.cu", render_kernels_cuda(registry));
    files.emplace_back("tloops_ptrcache.cu", std::string(kBanner) + emit_pointer_cache());
  }
  files.emplace_back(kManifestFile, render_manifest(registry));
  files.emplace_back(kArgumentsFile, render_arguments(registry));
  return files;
}

std::vector<std::filesystem::path> write_all(const Registry& registry,
                                             const std::filesystem::path& dir,
                                             Backend backend) {
  if (registry.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to generate");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : render_files(registry, backend)) {
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace tloops
