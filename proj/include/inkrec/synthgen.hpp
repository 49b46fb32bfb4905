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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "inkrec/ink.hpp"

namespace inkrec {

// A class skeleton: one control polyline per stroke, in the unit box.
struct TemplateSpec {
  std::string class_label;
  std::vector<std::vector<Point2>> strokes;

  std::size_t stroke_count() const { return strokes.size(); }
  // Throws ConfigError if a stroke has < 2 control points, zero length, or a
  // point outside [0, 1]^2.
  void validate() const;
};

// Twelve letter-like skeletons, three per stroke-count cluster.
std::vector<TemplateSpec> default_templates();

inline constexpr double kMaxNoise = 0.1;

// For every template, `samples_per_class` samples. Each stroke is resampled at
// uniform arc length to a seeded count in [40, 120], every point receives
// Gaussian jitter with std = noise * template diagonal, and the sample is then
// scaled by a factor in [0.8, 1.2] and rotated by up to 5 degrees about the
// box center. Points carry timestamps 10 ms apart with a 100 ms pen-up gap.
// Output is class-major and fully determined by the seed.
// Throws ConfigError for noise outside [0, 0.1] or samples_per_class == 0.
std::vector<InkSample> generate(std::span<const TemplateSpec> templates,
                                std::size_t samples_per_class, double noise,
                                std::uint64_t seed);

}  // namespace inkrec
