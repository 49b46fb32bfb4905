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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

// Dense double-precision kernels behind the classifier's inner loops. Every
// kernel has a portable scalar reference; vector variants are chosen once at
// runtime from what the CPU reports, or forced with INKREC_ISA=scalar|avx2|neon.
namespace inkrec::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // v[i] = mu * v[i] + alpha * x[i];  w[i] += v[i]
  void (*momentum_step)(double alpha, const double* x, double mu, double* v,
                        double* w, std::size_t n);
};

const KernelTable& scalar_kernels();
// Null when the variant was not compiled in or the CPU lacks the extension.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

const KernelTable* kernels_for(Isa isa);
Isa best_isa();
const KernelTable& active_kernels();
// Throws ConfigError if the requested variant is unavailable.
void select_isa(Isa isa);

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void momentum_step(double alpha, std::span<const double> x, double mu,
                          std::span<double> velocity,
                          std::span<double> weights) {
  active_kernels().momentum_step(alpha, x.data(), mu, velocity.data(),
                                 weights.data(), x.size());
}

}  // namespace inkrec::simd
