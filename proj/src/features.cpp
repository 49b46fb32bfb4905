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

#include "inkrec/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "inkrec/error.hpp"

namespace inkrec {

LengthCategory categorize_ratio(double pct) {
  if (pct < 25.0) return LengthCategory::kShort;
  if (pct < 50.0) return LengthCategory::kMiddleShort;
  if (pct < 75.0) return LengthCategory::kMiddleLong;
  return LengthCategory::kLong;
}

LengthRatio length_ratio(const Token& token, const Stroke& stroke) {
  const bool horizontal =
      direction_length(stroke).value == Direction::kHorizontal;
  const BoundingBox stroke_box = stroke.bounds();
  const BoundingBox token_box = bounds_of(token.points(stroke));
  const double stroke_extent =
      horizontal ? stroke_box.width() : stroke_box.height();
  const double token_extent =
      horizontal ? token_box.width() : token_box.height();
  if (!(stroke_extent > 0.0)) {
    throw Error("length ratio: stroke has zero extent on its dominant axis");
  }
  const double pct = std::clamp(100.0 * token_extent / stroke_extent, 0.0, 100.0);
  return {pct, categorize_ratio(pct)};
}

double direction_degrees(std::span<const InkPoint> points) {
  const BoundingBox box = bounds_of(points);
  if (box.width() == 0.0) return 90.0;
  return std::atan(box.height() / box.width()) * (180.0 / std::numbers::pi);
}

Point2 midpoint(std::span<const InkPoint> points) {
  return bounds_of(points).center();
}

Orientation orientation(std::span<const InkPoint> points) {
  if (points.size() < 3) return Orientation::kOnClockwise;
  const Point2 center = midpoint(points);
  const InkPoint& median = points[(points.size() - 1) / 2];
  return median.y >= center.y ? Orientation::kOnClockwise
                              : Orientation::kOnCounterClockwise;
}

std::vector<TokenFeatures> extract_features(const InkSample& sample,
                                            const SampleSegmentation& seg) {
  std::vector<TokenFeatures> out;
  out.reserve(seg.token_count());
  for (std::size_t s = 0; s < seg.strokes.size(); ++s) {
    const Stroke& stroke = sample.strokes()[s];
    const Point2 stroke_center = stroke.bounds().center();
    const auto& tokens = seg.strokes[s].tokens;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const Token& token = tokens[t];
      const auto pts = token.points(stroke);
      const LengthRatio ratio = length_ratio(token, stroke);
      TokenFeatures f;
      f.stroke_index = s;
      f.token_index = t;
      f.start = token.start;
      f.end = token.end;
      f.length_ratio_pct = ratio.pct;
      f.length_category = ratio.category;
      f.direction_deg = direction_degrees(pts);
      f.midpoint = midpoint(pts);
      f.orientation = orientation(pts);
      f.above_stroke_center = f.midpoint.y >= stroke_center.y;
      out.push_back(f);
    }
  }
  return out;
}

void EncodingLayout::validate() const {
  if (max_tokens == 0) throw ConfigError("max_tokens must be positive");
  if (bits_per_token != kBitsPerToken) {
    throw ConfigError("bits_per_token must be " + std::to_string(kBitsPerToken));
  }
}

std::vector<double> EncodedVector::as_reals() const {
  return std::vector<double>(bits.begin(), bits.end());
}

std::size_t direction_bin(double degrees) {
  const double bin_width = 90.0 / static_cast<double>(kDirectionBins);
  const double clamped = std::clamp(degrees, 0.0, 90.0);
  return std::min(static_cast<std::size_t>(clamped / bin_width),
                  kDirectionBins - 1);
}

Encoding encode(std::span<const TokenFeatures> tokens,
                const EncodingLayout& layout) {
  layout.validate();
  Encoding enc;
  enc.vector.layout = layout;
  enc.vector.bits.assign(layout.width(), 0);
  const std::size_t used = std::min(tokens.size(), layout.max_tokens);
  enc.truncated = tokens.size() - used;
  for (std::size_t slot = 0; slot < used; ++slot) {
    const TokenFeatures& f = tokens[slot];
    std::uint8_t* bits = enc.vector.bits.data() + slot * layout.bits_per_token;
    bits[static_cast<std::size_t>(f.length_category)] = 1;
    bits[4 + direction_bin(f.direction_deg)] = 1;
    bits[12] = f.orientation == Orientation::kOnClockwise ? 1 : 0;
    bits[13] = f.above_stroke_center ? 1 : 0;
    bits[14] = 1;
  }
  return enc;
}

StrokeCountGroup group_of(const InkSample& sample) {
  const std::size_t n = sample.stroke_count();
  return {static_cast<int>(std::min<std::size_t>(n, kClusterCount)), n};
}

std::string_view to_string(LengthCategory c) {
  switch (c) {
    case LengthCategory::kShort:
      return "short";
    case LengthCategory::kMiddleShort:
      return "middle-short";
    case LengthCategory::kMiddleLong:
      return "middle-long";
    case LengthCategory::kLong:
      return "long";
  }
  return "?";
}

std::string_view to_string(Orientation o) {
  return o == Orientation::kOnClockwise ? "on-clockwise" : "on-counterclockwise";
}

std::string feature_csv_header() {
  return "sample_id,stroke,token,start,end,ratio_pct,category,direction_deg,"
         "mid_x,mid_y,orientation\n";
}

void append_feature_csv(std::string& out, std::size_t sample_id,
                        std::span<const TokenFeatures> features) {
  for (const TokenFeatures& f : features) {
    out += std::to_string(sample_id);
    out += ',' + std::to_string(f.stroke_index);
    out += ',' + std::to_string(f.token_index);
    out += ',' + std::to_string(f.start);
    out += ',' + std::to_string(f.end);
    out += ',' + format_double(f.length_ratio_pct);
    out += ',';
    out += to_string(f.length_category);
    out += ',' + format_double(f.direction_deg);
    out += ',' + format_double(f.midpoint.x);
    out += ',' + format_double(f.midpoint.y);
    out += ',';
    out += to_string(f.orientation);
    out += '\n';
  }
}

}  // namespace inkrec
