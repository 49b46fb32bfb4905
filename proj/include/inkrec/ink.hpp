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
#include <string>
#include <string_view>
#include <vector>

namespace inkrec {

// Label reserved for live recognition input.
inline constexpr std::string_view kUnlabeled = "unlabeled";

// One pen sample. y grows upward; t is milliseconds when present.
struct InkPoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> t;

  friend bool operator==(const InkPoint&, const InkPoint&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct BoundingBox {
  double min_x = 0.0;
  double max_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  Point2 center() const { return {(max_x + min_x) / 2, (max_y + min_y) / 2}; }
};

// Requires a non-empty range.
BoundingBox bounds_of(std::span<const InkPoint> points);

// Removes points whose (x, y) equals the previous point's. Returns the number
// removed.
std::size_t drop_consecutive_duplicates(std::vector<InkPoint>& points);

// Pen-down to pen-up trajectory. Holds at least two finite points with
// non-decreasing timestamps; throws std::invalid_argument otherwise.
// Consecutive duplicates are removed at ingest (see drop_consecutive_duplicates),
// not by the constructor, so filters may produce them without losing points.
class Stroke {
 public:
  explicit Stroke(std::vector<InkPoint> points);

  std::span<const InkPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const InkPoint& operator[](std::size_t i) const { return points_[i]; }
  BoundingBox bounds() const { return bounds_of(points_); }

  friend bool operator==(const Stroke&, const Stroke&) = default;

 private:
  std::vector<InkPoint> points_;
};

// One handwriting pattern: a label and its strokes in writing order.
class InkSample {
 public:
  // Throws std::invalid_argument on an empty label or stroke list.
  InkSample(std::string label, std::vector<Stroke> strokes);

  const std::string& label() const { return label_; }
  std::span<const Stroke> strokes() const { return strokes_; }
  std::size_t stroke_count() const { return strokes_.size(); }
  std::size_t point_count() const;
  bool is_unlabeled() const { return label_ == kUnlabeled; }

  friend bool operator==(const InkSample&, const InkSample&) = default;

 private:
  std::string label_;
  std::vector<Stroke> strokes_;
};

// Contiguous inclusive index range [start, end] of one stroke.
struct Token {
  std::size_t stroke_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start + 1; }
  std::span<const InkPoint> points(const Stroke& stroke) const {
    return stroke.points().subspan(start, size());
  }

  friend bool operator==(const Token&, const Token&) = default;
};

}  // namespace inkrec
