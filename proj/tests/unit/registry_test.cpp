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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include <unistd.h>

#include "goldens.hpp"
#include "tloops/bench.hpp"
#include "tloops/error.hpp"
#include "tloops/registry.hpp"

namespace tloops {
namespace {

Registry suite_registry() {
  Registry r;
  for (const bench::SuiteEntry& e : bench::builtin_suite()) r.add(e.statement);
  return r;
}

std::vector<std::string> file_names(const FileSet& files) {
  std::vector<std::string> out;
  for (const auto& [name, content] : files) out.push_back(name);
  return out;
}

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

const std::string& content(const FileSet& files, const std::string& name) {
  for (const auto& [n, c] : files)
    if (n == name) return c;
  throw std::runtime_error(name);
}

TEST(Registry, AddIsIdempotent) {
  Registry r = suite_registry();
  EXPECT_EQ(r.size(), 14u);
  const std::vector<bench::SuiteEntry> suite = bench::builtin_suite();
  for (std::size_t k = 0; k < suite.size(); ++k) {
    EXPECT_EQ(r.add(suite[k].statement), static_cast<int>(k) + 1);
  }
  EXPECT_EQ(r.size(), 14u);
  const RegistryEntry* e = r.find(signature(suite[12].statement));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->ordinal, 13);
  EXPECT_EQ(e->count, (DataCount{16, 1}));
  EXPECT_EQ(r.find("nope"), nullptr);
}

TEST(Registry, FileSets) {
  const Registry r = suite_registry();
  EXPECT_EQ(file_names(render_files(r, Backend::kC)),
            (std::vector<std::string>{"tloops_kernels.h", "tloops_dispatch.c", "tloops_bindings.c",
                                      "tloops_kernels.c", "tloops_manifest.tsv",
                                      "tloops_arguments.tsv"}));
  EXPECT_EQ(file_names(render_files(r, Backend::kCuda)),
            (std::vector<std::string>{"tloops_kernels.h", "tloops_dispatch.cu",
                                      "tloops_bindings.cu", "tloops_kernels.cu",
                                      "tloops_ptrcache.cu", "tloops_manifest.tsv",
                                      "tloops_arguments.tsv"}));
  EXPECT_EQ(render_files(r, Backend::kBoth).size(), 10u);
}

TEST(Registry, Deterministic) {
  EXPECT_EQ(render_files(suite_registry(), Backend::kBoth),
            render_files(suite_registry(), Backend::kBoth));
}

TEST(Registry, EveryKernelReferencedOnce) {
  const FileSet files = render_files(suite_registry(), Backend::kBoth);
  const std::string& cdisp = content(files, "tloops_dispatch.c");
  const std::string& cudisp = content(files, "tloops_dispatch.cu");
  const std::string& ckern = content(files, "tloops_kernels.c");
  const std::string& cukern = content(files, "tloops_kernels.cu");
  for (int k = 1; k <= 14; ++k) {
    char name[16];
    std::snprintf(name, sizeof(name), "%04d", k);
    const std::string tl = std::string("tl_") + name + "(";
    const std::string wrapper = std::string("CUDAWrapper_g_") + name + "(";
    EXPECT_EQ(occurrences(cdisp, tl), 1u) << tl;
    EXPECT_EQ(occurrences(cudisp, wrapper), 1u) << wrapper;
    EXPECT_EQ(occurrences(ckern, "void " + tl), 1u) << tl;
    EXPECT_EQ(occurrences(cukern, "int " + wrapper), 1u) << wrapper;
    EXPECT_EQ(occurrences(cdisp, std::string("case ") + std::to_string(k) + ":"), 1u);
  }
  EXPECT_NE(cdisp.find("int tloops_kernel_count(void) { return 14; }"), std::string::npos);
  EXPECT_EQ(content(files, "tloops_bindings.c"), content(files, "tloops_bindings.cu"));
}

TEST(Registry, ManifestRows) {
  const Registry r = suite_registry();
  const std::string m = render_manifest(r);
  EXPECT_EQ(occurrences(m, "\n"), 14u);
  EXPECT_EQ(m.rfind("1\tASSIGN(set;LHS(A1,3,[1,0],[],[vi+0]);LEAF(B1,[vi+0]))\t6\t0\n", 0), 0u);
  EXPECT_NE(m.find("\t16\t1\n"), std::string::npos);
}

TEST(Registry, EmptyRegistryRejected) {
  const Registry r;
  try {
    write_all(r, std::filesystem::temp_directory_path() / "tloops_empty", Backend::kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(Registry, WriteAllAndIoFailure) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("tloops_registry_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const Registry r = suite_registry();
  const std::vector<std::filesystem::path> written = write_all(r, dir, Backend::kC);
  EXPECT_EQ(written.size(), 6u);
  for (const auto& p : written) EXPECT_TRUE(std::filesystem::exists(p)) << p;
  EXPECT_EQ(tloops::testing::read_file(dir / "tloops_manifest.tsv"), render_manifest(r));
  // A regular file where the directory should be.
  const std::filesystem::path blocker = dir / "blocker";
  tloops::testing::write_file(blocker, "x");
  try {
    write_all(r, blocker / "sub", Backend::kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("blocker"), std::string::npos) << e.what();
  }
  std::filesystem::remove_all(dir);
}

TEST(Registry, ParseBackend) {
  EXPECT_EQ(parse_backend("c"), Backend::kC);
  EXPECT_EQ(parse_backend("cuda"), Backend::kCuda);
  EXPECT_EQ(parse_backend("both"), Backend::kBoth);
  EXPECT_FALSE(parse_backend("opencl").has_value());
}

}  // namespace
}  // namespace tloops
