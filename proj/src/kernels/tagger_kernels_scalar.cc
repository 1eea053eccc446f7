// Copyright 2026 The silverner Authors.
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

#include <cstdlib>
#include <limits>
#include <string>

#include "silverner/tagger_kernels.h"

namespace silverner {
namespace kernels {
namespace {

void AccumulateRowsScalar(const ScoreRow *const *rows, std::size_t n, ScoreRow *out) {
  for (int c = 0; c < kLanes; ++c) out->v[c] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < kLanes; ++c) out->v[c] += rows[i]->v[c];
  }
}

void ViterbiStepScalar(const ScoreRow &prev, const ScoreRow *trans, int num_prev,
                       const ScoreRow &emission, ScoreRow *out, std::uint8_t *backptr) {
  for (int c = 0; c < kLanes; ++c) {
    double best = -std::numeric_limits<double>::infinity();
    std::uint8_t arg = 0;
    for (int p = 0; p < num_prev; ++p) {
      double v = prev.v[p] + trans[p].v[c];
      if (v > best) {
        best = v;
        arg = static_cast<std::uint8_t>(p);
      }
    }
    out->v[c] = best + emission.v[c];
    backptr[c] = arg;
  }
}

constexpr KernelTable kScalar = {Isa::kScalar, AccumulateRowsScalar, ViterbiStepScalar};

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "?";
}

const KernelTable &ScalarKernels() { return kScalar; }

bool CpuSupports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return Avx2Kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
      return NeonKernels() != nullptr;
  }
  return false;
}

const KernelTable &ActiveKernels() {
  static const KernelTable *active = []() -> const KernelTable * {
    const char *forced = std::getenv("SILVERNER_KERNELS");
    if (forced != nullptr) {
      std::string name(forced);
      if (name == "avx2" && CpuSupports(Isa::kAvx2)) return Avx2Kernels();
      if (name == "neon" && CpuSupports(Isa::kNeon)) return NeonKernels();
      return &kScalar;
    }
    if (CpuSupports(Isa::kAvx2)) return Avx2Kernels();
    if (CpuSupports(Isa::kNeon)) return NeonKernels();
    return &kScalar;
  }();
  return *active;
}

}  // namespace kernels
}  // namespace silverner
