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

#ifndef SILVERNER_TAGGER_KERNELS_H_
#define SILVERNER_TAGGER_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace silverner {
namespace kernels {

// Score vectors have one lane per tag plus a pad lane, so a row is exactly
// two AVX2 or four NEON double registers.
inline constexpr int kLanes = 8;

struct alignas(64) ScoreRow {
  double v[kLanes];
};

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

// All variants produce bit-identical results: additions happen in the same
// order per lane, and max selection keeps the first strictly greater value.
struct KernelTable {
  Isa isa;
  // out = rows[0] + rows[1] + ... (zero when n == 0).
  void (*accumulate_rows)(const ScoreRow *const *rows, std::size_t n, ScoreRow *out);
  // For every lane c: out[c] = max_p(prev[p] + trans[p].v[c]) + emission[c]
  // over p < num_prev, and backptr[c] is the first p reaching the maximum.
  void (*viterbi_step)(const ScoreRow &prev, const ScoreRow *trans, int num_prev,
                       const ScoreRow &emission, ScoreRow *out, std::uint8_t *backptr);
};

const KernelTable &ScalarKernels();
// nullptr when the variant is not compiled into this binary.
const KernelTable *Avx2Kernels();
const KernelTable *NeonKernels();

bool CpuSupports(Isa isa);

// The fastest variant the CPU supports. SILVERNER_KERNELS=scalar|avx2|neon
// forces a choice (falling back to scalar when unavailable).
const KernelTable &ActiveKernels();

}  // namespace kernels
}  // namespace silverner

#endif  // SILVERNER_TAGGER_KERNELS_H_
