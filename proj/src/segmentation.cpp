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

#include "inkrec/segmentation.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "inkrec/error.hpp"

namespace inkrec {

DirectionLength direction_length(const Stroke& stroke) {
  const BoundingBox box = stroke.bounds();
  const double raw = box.width() - box.height();
  return {raw >= 0.0 ? Direction::kHorizontal : Direction::kVertical, raw};
}

std::size_t window_half_width(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("window fraction must lie in (0, 1), got " +
                      std::to_string(fraction));
  }
  const auto m = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n)));
  return m < 1 ? 1 : m;
}

std::vector<Extremum> windowed_extrema(std::span<const double> v,
                                       std::size_t m) {
  std::vector<Extremum> out;
  const std::size_t n = v.size();
  if (m == 0 || n < 2 * m + 1) return out;

  // Lengths of the monotone runs ending at / starting from each index.
  std::vector<std::size_t> rise(n, 0), drop(n, 0);
  std::vector<std::size_t> fall_after(n, 0), climb_after(n, 0);
  for (std::size_t k = 1; k < n; ++k) {
    rise[k] = v[k - 1] <= v[k] ? rise[k - 1] + 1 : 0;
    drop[k] = v[k - 1] >= v[k] ? drop[k - 1] + 1 : 0;
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    fall_after[k] = v[k] >= v[k + 1] ? fall_after[k + 1] + 1 : 0;
    climb_after[k] = v[k] <= v[k + 1] ? climb_after[k + 1] + 1 : 0;
  }

  // A qualifying index on the same plateau as an earlier one of the same
  // kind repeats that extremum.
  std::optional<Extremum> previous;
  std::size_t plateau_start = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    if (v[k] != v[k - 1]) plateau_start = k;
  }
  for (std::size_t k = m; k + m < n; ++k) {
    if (k > m && v[k] != v[k - 1]) plateau_start = k;
    std::optional<ExtremumKind> kind;
    if (rise[k] >= m && fall_after[k] >= m &&
        (v[k] > v[k - m] || v[k] > v[k + m])) {
      kind = ExtremumKind::kMaximum;
    } else if (drop[k] >= m && climb_after[k] >= m &&
               (v[k] < v[k - m] || v[k] < v[k + m])) {
      kind = ExtremumKind::kMinimum;
    }
    if (!kind) continue;
    const bool same_plateau = previous && previous->kind == *kind &&
                              previous->index >= plateau_start;
    if (!same_plateau) out.push_back({k, *kind});
    previous = Extremum{k, *kind};
  }
  return out;
}

CriticalPointScan detect_critical_points(const Stroke& stroke,
                                         const DirectionLength& dl,
                                         double window_fraction,
                                         std::size_t stroke_index) {
  CriticalPointScan scan;
  const std::size_t n = stroke.size();
  scan.window = window_half_width(n, window_fraction);
  if (n < 2 * scan.window + 1) {
    scan.too_short = true;
    return scan;
  }
  // Horizontal strokes turn in y, vertical ones in x.
  std::vector<double> values;
  values.reserve(n);
  for (const InkPoint& p : stroke.points()) {
    values.push_back(dl.value == Direction::kHorizontal ? p.y : p.x);
  }
  for (const Extremum& e : windowed_extrema(values, scan.window)) {
    scan.points.push_back({stroke_index, e.index, e.kind});
  }
  return scan;
}

std::vector<Token> tokenize(const Stroke& stroke,
                            std::span<const CriticalPoint> critical_points,
                            std::size_t stroke_index) {
  const std::size_t n = stroke.size();
  std::vector<Token> tokens;
  std::size_t start = 0;
  std::size_t last_cut = 0;
  for (const CriticalPoint& cp : critical_points) {
    const std::size_t k = cp.point_index;
    if (k == 0 || k + 1 >= n) {
      throw std::invalid_argument("critical point " + std::to_string(k) +
                                  " is not interior to a stroke of " +
                                  std::to_string(n) + " points");
    }
    if (k < last_cut) {
      throw std::invalid_argument("critical points are not sorted");
    }
    last_cut = k;
    if (k == start) continue;  // would leave a one-point token
    tokens.push_back({stroke_index, start, k});
    start = k + 1;
  }
  if (start + 1 == n && !tokens.empty()) {
    tokens.back().end = n - 1;
  } else {
    tokens.push_back({stroke_index, start, n - 1});
  }
  return tokens;
}

std::size_t SampleSegmentation::token_count() const {
  std::size_t total = 0;
  for (const auto& s : strokes) total += s.tokens.size();
  return total;
}

std::size_t SampleSegmentation::critical_point_count() const {
  std::size_t total = 0;
  for (const auto& s : strokes) total += s.scan.points.size();
  return total;
}

SampleSegmentation segment_sample(const InkSample& sample,
                                  double window_fraction) {
  SampleSegmentation seg;
  seg.strokes.reserve(sample.stroke_count());
  for (std::size_t i = 0; i < sample.stroke_count(); ++i) {
    const Stroke& stroke = sample.strokes()[i];
    StrokeSegmentation s;
    s.direction = direction_length(stroke);
    s.scan = detect_critical_points(stroke, s.direction, window_fraction, i);
    s.tokens = tokenize(stroke, s.scan.points, i);
    seg.strokes.push_back(std::move(s));
  }
  return seg;
}

std::string_view to_string(Direction d) {
  return d == Direction::kHorizontal ? "horizontal" : "vertical";
}

std::string_view to_string(ExtremumKind k) {
  return k == ExtremumKind::kMaximum ? "maximum" : "minimum";
}

}  // namespace inkrec
