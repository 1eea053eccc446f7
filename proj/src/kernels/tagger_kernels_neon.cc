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

#include "silverner/tagger_kernels.h"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

#include <limits>

namespace silverner {
namespace kernels {
namespace {

void AccumulateRowsNeon(const ScoreRow *const *rows, std::size_t n, ScoreRow *out) {
  float64x2_t acc[4] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 4; ++k) acc[k] = vaddq_f64(acc[k], vld1q_f64(rows[i]->v + 2 * k));
  }
  for (int k = 0; k < 4; ++k) vst1q_f64(out->v + 2 * k, acc[k]);
}

void ViterbiStepNeon(const ScoreRow &prev, const ScoreRow *trans, int num_prev,
                     const ScoreRow &emission, ScoreRow *out, std::uint8_t *backptr) {
  float64x2_t best[4], arg[4];
  for (int k = 0; k < 4; ++k) {
    best[k] = vdupq_n_f64(-std::numeric_limits<double>::infinity());
    arg[k] = vdupq_n_f64(0.0);
  }
  for (int p = 0; p < num_prev; ++p) {
    const float64x2_t from = vdupq_n_f64(prev.v[p]);
    const float64x2_t idx = vdupq_n_f64(static_cast<double>(p));
    for (int k = 0; k < 4; ++k) {
      const float64x2_t v = vaddq_f64(from, vld1q_f64(trans[p].v + 2 * k));
      const uint64x2_t gt = vcgtq_f64(v, best[k]);
      best[k] = vbslq_f64(gt, v, best[k]);
      arg[k] = vbslq_f64(gt, idx, arg[k]);
    }
  }
  double args[kLanes];
  for (int k = 0; k < 4; ++k) {
    vst1q_f64(out->v + 2 * k, vaddq_f64(best[k], vld1q_f64(emission.v + 2 * k)));
    vst1q_f64(args + 2 * k, arg[k]);
  }
  for (int c = 0; c < kLanes; ++c) backptr[c] = static_cast<std::uint8_t>(args[c]);
}

constexpr KernelTable kNeon = {Isa::kNeon, AccumulateRowsNeon, ViterbiStepNeon};

}  // namespace

const KernelTable *NeonKernels() { return &kNeon; }

}  // namespace kernels
}  // namespace silverner

#else

namespace silverner {
namespace kernels {
const KernelTable *NeonKernels() { return nullptr; }
}  // namespace kernels
}  // namespace silverner

#endif
