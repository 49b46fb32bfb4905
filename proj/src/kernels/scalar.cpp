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

#include "inkrec/simd.hpp"

namespace inkrec::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void momentum_step_scalar(double alpha, const double* x, double mu, double* v,
                          double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = mu * v[i] + alpha * x[i];
    w[i] += v[i];
  }
}

constexpr KernelTable kScalar{Isa::kScalar, dot_scalar, axpy_scalar,
                              momentum_step_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace inkrec::simd
