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

#include "inkrec/ink.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace inkrec {

BoundingBox bounds_of(std::span<const InkPoint> points) {
  if (points.empty()) throw std::invalid_argument("bounds of an empty range");
  BoundingBox box{points[0].x, points[0].x, points[0].y, points[0].y};
  for (const InkPoint& p : points.subspan(1)) {
    box.min_x = std::min(box.min_x, p.x);
    box.max_x = std::max(box.max_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

std::size_t drop_consecutive_duplicates(std::vector<InkPoint>& points) {
  const auto last = std::unique(
      points.begin(), points.end(),
      [](const InkPoint& a, const InkPoint& b) { return a.x == b.x && a.y == b.y; });
  const auto dropped = static_cast<std::size_t>(points.end() - last);
  points.erase(last, points.end());
  return dropped;
}

Stroke::Stroke(std::vector<InkPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("stroke has " + std::to_string(points_.size()) +
                                " point(s); at least 2 required");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const InkPoint& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  " has a non-finite coordinate");
    }
    if (p.t.has_value() != points_[0].t.has_value()) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  ": timestamps must be present on all points "
                                  "of a stroke or on none");
    }
    if (p.t && !std::isfinite(*p.t)) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  " has a non-finite timestamp");
    }
    if (i > 0 && p.t && *p.t < *points_[i - 1].t) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  ": timestamp decreases");
    }
  }
}

InkSample::InkSample(std::string label, std::vector<Stroke> strokes)
    : label_(std::move(label)), strokes_(std::move(strokes)) {
  if (label_.empty()) throw std::invalid_argument("label is empty");
  if (strokes_.empty()) throw std::invalid_argument("sample has no strokes");
}

std::size_t InkSample::point_count() const {
  std::size_t n = 0;
  for (const Stroke& s : strokes_) n += s.size();
  return n;
}

}  // namespace inkrec
