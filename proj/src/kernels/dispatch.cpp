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

#include <atomic>
#include <cstdlib>
#include <string>

#include "inkrec/error.hpp"
#include "inkrec/simd.hpp"

namespace inkrec::simd {

namespace detail {
#if defined(INKREC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(INKREC_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

const KernelTable* avx2_kernels() {
#if defined(INKREC_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(INKREC_HAVE_NEON)
  return &detail::neon_table();
#else
  return nullptr;
#endif
}

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &scalar_kernels();
    case Isa::kAvx2:
      return avx2_kernels();
    case Isa::kNeon:
      return neon_kernels();
  }
  return nullptr;
}

Isa best_isa() {
  if (avx2_kernels() != nullptr) return Isa::kAvx2;
  if (neon_kernels() != nullptr) return Isa::kNeon;
  return Isa::kScalar;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "neon") return Isa::kNeon;
  return std::nullopt;
}

namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("INKREC_ISA"); env != nullptr) {
    if (const auto isa = parse_isa(env)) {
      if (const KernelTable* table = kernels_for(*isa)) return table;
    }
  }
  return kernels_for(best_isa());
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() {
  return *active_slot().load(std::memory_order_acquire);
}

void select_isa(Isa isa) {
  const KernelTable* table = kernels_for(isa);
  if (table == nullptr) {
    throw ConfigError("kernel variant '" + std::string(isa_name(isa)) +
                      "' is not available on this machine");
  }
  active_slot().store(table, std::memory_order_release);
}

}  // namespace inkrec::simd
