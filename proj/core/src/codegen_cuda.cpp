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

#include "tloops/codegen_cuda.hpp"

#include <iterator>
#include <numeric>
#include <sstream>

#include "codegen_common.hpp"
#include "tloops/evaluator.hpp"
#include "tloops/parser.hpp"

namespace tloops {

using namespace detail;

std::string_view coord_name(Coord c) {
  switch (c) {
    case Coord::kThreadY: return "threadIdx.y";
    case Coord::kBlockY: return "blockIdx.y";
    case Coord::kThreadZ: return "threadIdx.z";
    case Coord::kBlockZ: return "blockIdx.z";
  }
  return "threadIdx.y";
}

ParallelPlan plan_parallelization(const ValidatedStatement& s) {
  const LoopSpace& loops = s.loops;
  const int rank = static_cast<int>(loops.vars.size());
  const std::vector<int> partner = lower_bound_partners(loops.sym, rank);
  static constexpr Coord kOrder[] = {Coord::kThreadY, Coord::kBlockY,
                                     Coord::kThreadZ, Coord::kBlockZ};
  ParallelPlan plan;
  std::vector<bool> serial(static_cast<std::size_t>(rank), false);
  for (int p = 0; p < rank; ++p) {
    const auto ps = static_cast<std::size_t>(p);
    if (partner[ps] >= 0) {
      serial[ps] = true;
    } else if (plan.parallel.size() < std::size(kOrder)) {
      plan.parallel.push_back({p, loops.vars[ps], kOrder[plan.parallel.size()]});
    } else {
      serial[ps] = true;
    }
  }
  for (int p = rank - 1; p >= 0; --p) {
    const auto ps = static_cast<std::size_t>(p);
    if (serial[ps]) plan.serial.push_back({p, loops.vars[ps], partner[ps]});
  }
  return plan;
}

int blocksize_x_for(int p) {
  switch (p) {
    case 1: return 256;
    case 3: return 64;
    case 4: return 64;
    case 9: return 32;
    case 12: return 16;
    case 16: return 32;
    default: break;
  }
  const int unit = 32 / std::gcd(p, 32);
  const int bx = (256 / p) / unit * unit;
  return bx < unit ? unit : bx;
}

LaunchConfig tune(const ParallelPlan& plan) {
  LaunchConfig cfg;
  for (const ParallelIndex& pi : plan.parallel) {
    switch (pi.coord) {
      case Coord::kThreadY: cfg.by = pi.var.dim; break;
      case Coord::kBlockY: cfg.gy = pi.var.dim; break;
      case Coord::kThreadZ: cfg.bz = pi.var.dim; break;
      case Coord::kBlockZ: cfg.gz = pi.var.dim; break;
    }
  }
  cfg.bx = blocksize_x_for(cfg.by * cfg.bz);
  for (const SerialIndex& si : plan.serial) cfg.serialized.push_back(si.var.name);
  return cfg;
}

std::string cuda_kernel_name(int ordinal) { return "g_" + ordinal_text(ordinal); }

std::string cuda_wrapper_name(int ordinal) {
  return "CUDAWrapper_" + cuda_kernel_name(ordinal);
}

namespace {

std::string kernel_parameter(const ArgumentSpec& a) {
  switch (a.role) {
    case ArgRole::kLhs: return "double* const* __restrict__ " + a.param;
    case ArgRole::kTensor: return "const double* const* __restrict__ " + a.param;
    case ArgRole::kScalarField: return "const double* __restrict__ " + a.param;
    case ArgRole::kConstant: return "const double " + a.param;
  }
  return {};
}

std::string wrapper_parameter(const ArgumentSpec& a) {
  switch (a.role) {
    case ArgRole::kLhs: return "double* const* " + a.param;
    case ArgRole::kTensor: return "const double* const* " + a.param;
    case ArgRole::kScalarField: return "const double* " + a.param;
    case ArgRole::kConstant: return "const double " + a.param;
  }
  return {};
}

}  // namespace

GeneratedUnit emit_cuda(const ValidatedStatement& s, int ordinal) {
  const ParamMap params = collect_params(s);
  const auto names = index_identifiers(s);
  const ParallelPlan plan = plan_parallelization(s);
  const LaunchConfig cfg = tune(plan);
  const std::vector<ArgumentSpec> args = call_order(params.args);
  const std::string kernel = cuda_kernel_name(ordinal);

  GeneratedUnit unit;
  unit.kernel_name = kernel;
  unit.arguments = params.args;

  std::ostringstream os;
  os << "/* " << render(s.stmt) << " */\n";
  os << "__global__ void " << kernel << "(const int N";
  for (const ArgumentSpec& a : args) os << ", " << kernel_parameter(a);
  os << ")\n{\n";
  for (const ParallelIndex& pi : plan.parallel) {
    os << "  const int " << names.at(pi.var.name) << " = " << coord_name(pi.coord)
       << ";\n";
  }
  os << "  const int x = blockIdx.x*blockDim.x + threadIdx.x;\n";
  os << "  if ((x<N)";
  for (const ParallelIndex& pi : plan.parallel) {
    os << "&&(" << names.at(pi.var.name) << "<" << pi.var.dim << ")";
  }
  os << "){\n";
  int depth = 2;
  for (const SerialIndex& si : plan.serial) {
    const std::string v = names.at(si.var.name);
    const std::string start =
        si.lower_partner < 0
            ? "0"
            : names.at(s.loops.vars[static_cast<std::size_t>(si.lower_partner)].name);
    os << indent(depth) << "for(int " << v << "=" << start << "; " << v << "<"
       << si.var.dim << "; ++" << v << "){\n";
    ++depth;
  }
  const ExprPtr expanded = expand_all_sums(s.stmt.rhs);
  const std::string value = render_c(*expanded, [&](const Expr& e) -> std::string {
    if (const auto* leaf = std::get_if<TensorLeaf>(&e.node)) {
      return params.tensor.at(leaf->field) + "[" +
             flat_index(*leaf, s.shape_of(leaf->field).dim, names) + "][x]";
    }
    if (const auto* f = std::get_if<ScalarFieldRef>(&e.node)) {
      return params.scalar.at(f->name) + "[x]";
    }
    return params.constant.at(&e);
  });
  os << indent(depth) << "L[" << flat_index(s.stmt.lhs, s.lhs_shape().dim, names)
     << "][x] " << assign_op_token(s.stmt.op) << " " << value << ";\n";
  for (--depth; depth >= 1; --depth) os << indent(depth) << "}\n";
  os << "}\n\n";

  std::string proto = "int " + cuda_wrapper_name(ordinal) + "(const long N";
  for (const ArgumentSpec& a : args) proto += ", " + wrapper_parameter(a);
  proto += ")";
  unit.prototype = proto;

  os << proto << "\n{\n";
  os << "  const int blocksize_x = " << cfg.bx << ";\n";
  os << "  if (N <= 0) return 0;\n";
  os << "  if (N > " << kMaxBlocksX << "L*blocksize_x) return 1;\n";
  os << "  const int nblocks_x = N/blocksize_x + (N%blocksize_x ? 1 : 0);\n";
  os << "  const int blocksize_y = " << cfg.by << ";\n";
  os << "  const int nblocks_y = " << cfg.gy << ";\n";
  os << "  const int blocksize_z = " << cfg.bz << ";\n";
  os << "  const int nblocks_z = " << cfg.gz << ";\n";
  os << "  const dim3 blocksize(blocksize_x, blocksize_y, blocksize_z);\n";
  os << "  const dim3 nblocks(nblocks_x, nblocks_y, nblocks_z);\n";
  os << "  " << kernel << "<<<nblocks,blocksize>>>((int)N";
  for (const ArgumentSpec& a : args) os << ", " << a.param;
  os << ");\n";
  os << "  return 0;\n";
  os << "}\n";
  unit.source = os.str();
  return unit;
}

std::string emit_pointer_cache() {
  return R"(/* Device copies of host component-pointer arrays.
 *
 * A cache is created empty. The device array is allocated on the first
 * retrieval; afterwards the stored host copy is compared with the live host
 * array on every retrieval and uploaded again only when they differ. */
#include <stdlib.h>
#include <string.h>

#ifndef TL_DEVICE_ALLOC
#include <cuda_runtime.h>
#define TL_DEVICE_ALLOC(ptr, bytes) ((int)cudaMalloc((ptr), (bytes)))
#define TL_DEVICE_UPLOAD(dst, src, bytes) \
  ((int)cudaMemcpy((dst), (src), (bytes), cudaMemcpyHostToDevice))
#endif

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

#ifdef __cplusplus
extern "C"
#endif
void** tl_ptrcache_get(tl_ptrcache* cache, const void* owner,
                       void* const* host, int count)
{
  const size_t bytes = (size_t)count*sizeof(void*);
  int same;
  int k;
  if (cache->device_array == NULL) {
    void* device = NULL;
    if (TL_DEVICE_ALLOC(&device, bytes) != 0) return NULL;
    cache->device_array = (void**)device;
    cache->host_copy = (void**)malloc(bytes);
    if (cache->host_copy == NULL) return NULL;
    cache->count = count;
    cache->valid = 0;
  }
  if (cache->count != count) return NULL;
  same = cache->valid && cache->owner == owner;
  for (k = 0; same && k < count; ++k) {
    same = cache->host_copy[k] == host[k];
  }
  if (!same) {
    memcpy(cache->host_copy, host, bytes);
    if (TL_DEVICE_UPLOAD(cache->device_array, cache->host_copy, bytes) != 0) {
      cache->valid = 0;
      return NULL;
    }
    cache->owner = owner;
    cache->valid = 1;
  }
  return cache->device_array;
}
)";
}

}  // namespace tloops
