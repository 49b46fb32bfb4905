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

#include "inkrec/preprocess.hpp"

#include "inkrec/error.hpp"

namespace inkrec {

void PreprocessConfig::validate() const {
  if (passes < 1) {
    throw ConfigError("smoothing passes must be >= 1, got " +
                      std::to_string(passes));
  }
}

Axes extract_axes(const InkSample& sample) {
  Axes axes;
  axes.xs.reserve(sample.point_count());
  axes.ys.reserve(sample.point_count());
  for (const Stroke& stroke : sample.strokes()) {
    for (const InkPoint& p : stroke.points()) {
      axes.xs.push_back(p.x);
      axes.ys.push_back(p.y);
    }
  }
  return axes;
}

namespace {

// 0.6 * prev + 0.2 * cur + 0.2 * next, written around `prev` so that a
// constant run stays exactly constant in floating point.
inline double filter_tap(double prev, double cur, double next) {
  return prev + 0.2 * ((cur - prev) + (next - prev));
}

}  // namespace

Stroke smooth_stroke(const Stroke& stroke, const PreprocessConfig& config) {
  config.validate();
  std::vector<InkPoint> points(stroke.points().begin(), stroke.points().end());
  const std::size_t n = points.size();
  for (int pass = 0; pass < config.passes; ++pass) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      points[i].x = filter_tap(points[i - 1].x, points[i].x, points[i + 1].x);
      points[i].y = filter_tap(points[i - 1].y, points[i].y, points[i + 1].y);
    }
  }
  return Stroke(std::move(points));
}

InkSample smooth_sample(const InkSample& sample,
                        const PreprocessConfig& config) {
  std::vector<Stroke> strokes;
  strokes.reserve(sample.stroke_count());
  for (const Stroke& s : sample.strokes()) strokes.push_back(smooth_stroke(s, config));
  return InkSample(sample.label(), std::move(strokes));
}

}  // namespace inkrec
