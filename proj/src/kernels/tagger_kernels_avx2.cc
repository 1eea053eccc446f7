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

// Built with -mavx2 only; dispatch guarantees the CPU supports it.

#include "silverner/tagger_kernels.h"

#if defined(SILVERNER_HAVE_AVX2)
#include <immintrin.h>

#include <limits>

namespace silverner {
namespace kernels {
namespace {

void AccumulateRowsAvx2(const ScoreRow *const *rows, std::size_t n, ScoreRow *out) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n; ++i) {
    lo = _mm256_add_pd(lo, _mm256_load_pd(rows[i]->v));
    hi = _mm256_add_pd(hi, _mm256_load_pd(rows[i]->v + 4));
  }
  _mm256_store_pd(out->v, lo);
  _mm256_store_pd(out->v + 4, hi);
}

void ViterbiStepAvx2(const ScoreRow &prev, const ScoreRow *trans, int num_prev,
                     const ScoreRow &emission, ScoreRow *out, std::uint8_t *backptr) {
  const __m256d neg_inf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_lo = neg_inf, best_hi = neg_inf;
  __m256d arg_lo = _mm256_setzero_pd(), arg_hi = _mm256_setzero_pd();
  for (int p = 0; p < num_prev; ++p) {
    const __m256d from = _mm256_set1_pd(prev.v[p]);
    const __m256d idx = _mm256_set1_pd(static_cast<double>(p));
    const __m256d v_lo = _mm256_add_pd(from, _mm256_load_pd(trans[p].v));
    const __m256d v_hi = _mm256_add_pd(from, _mm256_load_pd(trans[p].v + 4));
    const __m256d gt_lo = _mm256_cmp_pd(v_lo, best_lo, _CMP_GT_OQ);
    const __m256d gt_hi = _mm256_cmp_pd(v_hi, best_hi, _CMP_GT_OQ);
    best_lo = _mm256_blendv_pd(best_lo, v_lo, gt_lo);
    best_hi = _mm256_blendv_pd(best_hi, v_hi, gt_hi);
    arg_lo = _mm256_blendv_pd(arg_lo, idx, gt_lo);
    arg_hi = _mm256_blendv_pd(arg_hi, idx, gt_hi);
  }
  _mm256_store_pd(out->v, _mm256_add_pd(best_lo, _mm256_load_pd(emission.v)));
  _mm256_store_pd(out->v + 4, _mm256_add_pd(best_hi, _mm256_load_pd(emission.v + 4)));
  alignas(32) double args[kLanes];
  _mm256_store_pd(args, arg_lo);
  _mm256_store_pd(args + 4, arg_hi);
  for (int c = 0; c < kLanes; ++c) backptr[c] = static_cast<std::uint8_t>(args[c]);
}

constexpr KernelTable kAvx2 = {Isa::kAvx2, AccumulateRowsAvx2, ViterbiStepAvx2};

}  // namespace

const KernelTable *Avx2Kernels() { return &kAvx2; }

}  // namespace kernels
}  // namespace silverner

#else

namespace silverner {
namespace kernels {
const KernelTable *Avx2Kernels() { return nullptr; }
}  // namespace kernels
}  // namespace silverner

#endif
