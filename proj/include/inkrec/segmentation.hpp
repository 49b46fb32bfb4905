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
#include <span>
#include <string_view>
#include <vector>

#include "inkrec/ink.hpp"

namespace inkrec {

inline constexpr double kDefaultWindowFraction = 0.05;

enum class Direction { kHorizontal, kVertical };

// Signed extent difference (width - height) of a stroke and the format it
// implies: Horizontal iff raw_length >= 0.
struct DirectionLength {
  Direction value = Direction::kHorizontal;
  double raw_length = 0.0;
};

DirectionLength direction_length(const Stroke& stroke);

enum class ExtremumKind { kMaximum, kMinimum };

struct CriticalPoint {
  std::size_t stroke_index = 0;
  std::size_t point_index = 0;
  ExtremumKind kind = ExtremumKind::kMaximum;

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

struct CriticalPointScan {
  std::vector<CriticalPoint> points;
  // Points per flank used for the test.
  std::size_t window = 0;
  // The stroke had fewer than 2 * window + 1 points; nothing was tested.
  bool too_short = false;
};

// max(1, floor(fraction * n)). Throws ConfigError unless 0 < fraction < 1.
std::size_t window_half_width(std::size_t n, double fraction);

struct Extremum {
  std::size_t index = 0;
  ExtremumKind kind = ExtremumKind::kMaximum;

  friend bool operator==(const Extremum&, const Extremum&) = default;
};

// Windowed extrema of a value sequence. Index k (with m <= k < n - m) is a
// maximum iff values are non-decreasing over [k-m, k], non-increasing over
// [k, k+m], and values[k] is strictly above at least one value in that
// window; minima mirror this. Of a run of consecutive qualifying indices with
// the same kind and value only the first is kept. Linear time.
std::vector<Extremum> windowed_extrema(std::span<const double> values,
                                       std::size_t m);

// Applies windowed_extrema to y for Horizontal strokes and to x for Vertical
// ones, with m = window_half_width(stroke.size(), window_fraction).
CriticalPointScan detect_critical_points(
    const Stroke& stroke, const DirectionLength& dl,
    double window_fraction = kDefaultWindowFraction,
    std::size_t stroke_index = 0);

// Cuts a stroke at its critical points. A critical point at k closes the
// current token at k and the next one starts at k + 1. A cut that would leave
// a one-point token is skipped so the point joins the following token; a
// one-point tail joins the preceding token. Throws std::invalid_argument if
// the critical points are unsorted or not interior.
std::vector<Token> tokenize(const Stroke& stroke,
                            std::span<const CriticalPoint> critical_points,
                            std::size_t stroke_index = 0);

struct StrokeSegmentation {
  DirectionLength direction;
  CriticalPointScan scan;
  std::vector<Token> tokens;
};

struct SampleSegmentation {
  std::vector<StrokeSegmentation> strokes;

  std::size_t token_count() const;
  std::size_t critical_point_count() const;
};

SampleSegmentation segment_sample(
    const InkSample& sample, double window_fraction = kDefaultWindowFraction);

std::string_view to_string(Direction d);
std::string_view to_string(ExtremumKind k);

}  // namespace inkrec
