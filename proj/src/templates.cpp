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

#include "inkrec/synthgen.hpp"

namespace inkrec {
namespace {

using Poly = std::vector<Point2>;

// Templates are coarse polylines: every intended turn differs from its
// neighbours by at least 0.1 on the stroke's dominant-axis test coordinate,
// and every stroke is clearly wider than tall or taller than wide, so the
// control-point jitter moves turns without creating or removing them.

Poly dot(double x, double y) { return {{x - 0.02, y - 0.015}, {x + 0.02, y + 0.015}}; }

// Right-to-left teeth followed by a bowl, as in seen.
Poly seen_body() {
  return {{0.95, 0.65}, {0.88, 0.45}, {0.81, 0.65}, {0.74, 0.45}, {0.67, 0.65},
          {0.60, 0.40}, {0.40, 0.20}, {0.18, 0.35}, {0.08, 0.60}};
}

Poly bowl() { return {{0.88, 0.65}, {0.70, 0.35}, {0.50, 0.22}, {0.30, 0.35}, {0.12, 0.65}}; }

}  // namespace

std::vector<TemplateSpec> default_templates() {
  return {
      // One stroke.
      {"ا", {{{0.50, 0.95}, {0.50, 0.05}}}},
      {"د", {{{0.30, 0.85}, {0.65, 0.50}, {0.30, 0.20}}}},
      {"س", {seen_body()}},
      // Two strokes.
      {"ن", {bowl(), dot(0.5, 0.85)}},
      {"ل", {{{0.75, 0.95}, {0.75, 0.40}}, {{0.85, 0.45}, {0.55, 0.15}, {0.20, 0.40}}}},
      {"ی",
       {{{0.65, 0.90}, {0.40, 0.70}, {0.65, 0.50}, {0.40, 0.25}, {0.60, 0.10}},
        {{0.30, 0.05}, {0.70, 0.08}}}},
      // Three strokes.
      {"ز",
       {{{0.62, 0.62}, {0.45, 0.25}, {0.25, 0.10}}, dot(0.60, 0.82), dot(0.45, 0.82)}},
      {"ف",
       {{{0.95, 0.42}, {0.55, 0.22}, {0.10, 0.45}},
        {{0.80, 0.42}, {0.88, 0.58}, {0.80, 0.74}, {0.72, 0.58}, {0.80, 0.42}},
        dot(0.80, 0.88)}},
      {"ک",
       {{{0.82, 0.95}, {0.75, 0.32}},
        {{0.80, 0.35}, {0.45, 0.20}, {0.12, 0.45}},
        {{0.50, 0.70}, {0.68, 0.82}}}},
      // Four strokes.
      {"ش", {seen_body(), dot(0.70, 0.80), dot(0.80, 0.80), dot(0.75, 0.92)}},
      {"ث", {bowl(), dot(0.40, 0.78), dot(0.60, 0.78), dot(0.50, 0.90)}},
      {"چ",
       {{{0.25, 0.75}, {0.70, 0.85}, {0.30, 0.50}, {0.45, 0.10}},
        dot(0.45, 0.40),
        dot(0.58, 0.40),
        dot(0.52, 0.28)}},
  };
}

}  // namespace inkrec
