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

#include <vector>

#include "inkrec/ink.hpp"

namespace inkrec {

struct PreprocessConfig {
  int passes = 1;

  // Throws ConfigError when passes < 1.
  void validate() const;
};

struct Axes {
  std::vector<double> xs;
  std::vector<double> ys;
};

// Per-stroke coordinate sequences concatenated in stroke order.
Axes extract_axes(const InkSample& sample);

// Recursive three-tap smoothing filter. Each interior point becomes
//   3/5 * (already smoothed previous) + 1/5 * current + 1/5 * next,
// swept left to right `passes` times. Endpoints are kept bit-identical and the
// point count is preserved.
Stroke smooth_stroke(const Stroke& stroke, const PreprocessConfig& config = {});

InkSample smooth_sample(const InkSample& sample,
                        const PreprocessConfig& config = {});

}  // namespace inkrec
