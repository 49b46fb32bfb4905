// Copyright 2026 The inkrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AArch64 only; NEON is architecturally guaranteed there.
#include <arm_neon.h>

#include "inkrec/simd.hpp"

namespace inkrec::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void momentum_step_neon(double alpha, const double* x, double mu, double* v,
                        double* w, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vmu = vdupq_n_f64(mu);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t step =
        vfmaq_f64(vmulq_f64(va, vld1q_f64(x + i)), vmu, vld1q_f64(v + i));
    vst1q_f64(v + i, step);
    vst1q_f64(w + i, vaddq_f64(vld1q_f64(w + i), step));
  }
  for (; i < n; ++i) {
    v[i] = mu * v[i] + alpha * x[i];
    w[i] += v[i];
  }
}

constexpr KernelTable kNeon{Isa::kNeon, dot_neon, axpy_neon,
                            momentum_step_neon};

}  // namespace

const KernelTable& neon_table() { return kNeon; }

}  // namespace inkrec::simd::detail
