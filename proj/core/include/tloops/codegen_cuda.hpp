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

#include <string>
#include <string_view>
#include <vector>

#include "tloops/analysis.hpp"
#include "tloops/codegen_c.hpp"

namespace tloops {

/// Thread coordinates available to left-hand side indices, in the order
/// they are handed out. The x dimension always carries the gridpoints.
enum class Coord { kThreadY, kBlockY, kThreadZ, kBlockZ };

std::string_view coord_name(Coord c);  // "threadIdx.y", ...

struct ParallelIndex {
  int slot = 0;  // position in the loop space
  IndexVar var;
  Coord coord = Coord::kThreadY;
};

struct SerialIndex {
  int slot = 0;
  IndexVar var;
  int lower_partner = -1;  // slot whose value starts this loop, or -1
};

struct ParallelPlan {
  std::vector<ParallelIndex> parallel;  // ascending slot
  std::vector<SerialIndex> serial;      // outermost loop first
};

/// The dependent member (pos1) of every chain inequality is serialized; the
/// rest take threadIdx.y, blockIdx.y, threadIdx.z, blockIdx.z in ascending
/// slot order, and any surplus beyond four is serialized too.
ParallelPlan plan_parallelization(const ValidatedStatement& s);

inline constexpr long kMaxBlocksX = 65535;

struct LaunchConfig {
  int bx = 256;
  int by = 1;
  int bz = 1;
  int gy = 1;
  int gz = 1;
  std::vector<std::string> serialized;  // index names, outermost first

  long long max_gridsize() const { return kMaxBlocksX * bx; }
  long long total_blocksize() const { return static_cast<long long>(bx) * by * bz; }
  // Blocks along x for gridsize n: n/bx + (n%bx ? 1 : 0).
  long long blocks_x(long long n) const { return n / bx + (n % bx ? 1 : 0); }
};

/// blocksize_x for p = blocksize_y*blocksize_z: 1->256, 3->64, 4->64,
/// 9->32, 12->16, 16->32. Other products (index dimensions other than 3
/// and 4) get the largest value <= 256/p that keeps the total a multiple
/// of 32.
int blocksize_x_for(int p);

LaunchConfig tune(const ParallelPlan& plan);

std::string cuda_kernel_name(int ordinal);   // g_0001
std::string cuda_wrapper_name(int ordinal);  // CUDAWrapper_g_0001

/// Kernel plus host wrapper. `prototype` is the wrapper declaration; sums
/// are unrolled in expand_sum order.
GeneratedUnit emit_cuda(const ValidatedStatement& s, int ordinal);

/// Self-contained device pointer-array cache. The device calls default to
/// the CUDA runtime and can be replaced by defining TL_DEVICE_ALLOC and
/// TL_DEVICE_UPLOAD before the unit is compiled.
std::string emit_pointer_cache();

}  // namespace tloops
