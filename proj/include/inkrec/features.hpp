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
#include <string_view>
#include <vector>

#include "inkrec/ink.hpp"
#include "inkrec/segmentation.hpp"
#include "inkrec/text.hpp"

namespace inkrec {

enum class LengthCategory { kShort, kMiddleShort, kMiddleLong, kLong };
enum class Orientation { kOnClockwise, kOnCounterClockwise };

struct LengthRatio {
  double pct = 0.0;
  LengthCategory category = LengthCategory::kShort;
};

// Half-open quartile bins: [0,25) [25,50) [50,75) [75,100].
LengthCategory categorize_ratio(double pct);

// Token extent over stroke extent, both measured along the stroke's dominant
// axis (x for Horizontal strokes, y for Vertical), as a percentage clamped to
// [0, 100]. Throws Error if the stroke has zero extent on that axis.
LengthRatio length_ratio(const Token& token, const Stroke& stroke);

// atan(height / width) of the bounding box in degrees; exactly 90 when the
// width is zero.
double direction_degrees(std::span<const InkPoint> points);

// Bounding-box center.
Point2 midpoint(std::span<const InkPoint> points);

// Compares the trajectory point at the lower median index with the box
// center: OnClockwise when the curve passes at or above it. Fewer than three
// points default to OnClockwise.
Orientation orientation(std::span<const InkPoint> points);

struct TokenFeatures {
  std::size_t stroke_index = 0;
  std::size_t token_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  double length_ratio_pct = 0.0;
  LengthCategory length_category = LengthCategory::kShort;
  double direction_deg = 0.0;
  Point2 midpoint;
  Orientation orientation = Orientation::kOnClockwise;
  // Token midpoint at or above the parent stroke's box center.
  bool above_stroke_center = false;
};

// Features for every token, in stroke order then token order.
std::vector<TokenFeatures> extract_features(const InkSample& sample,
                                            const SampleSegmentation& seg);

inline constexpr std::size_t kBitsPerToken = 15;
inline constexpr std::size_t kDirectionBins = 8;
inline constexpr std::size_t kDefaultMaxTokens = 8;

struct EncodingLayout {
  std::size_t max_tokens = kDefaultMaxTokens;
  std::size_t bits_per_token = kBitsPerToken;

  std::size_t width() const { return max_tokens * bits_per_token; }
  // Throws ConfigError for max_tokens == 0 or bits_per_token != 15.
  void validate() const;
};

// Per token slot:
//   bits 0-3   length category one-hot (Short .. Long)
//   bits 4-11  direction one-hot, 8 bins of 11.25 degrees over [0, 90]
//   bit 12     orientation (1 = OnClockwise)
//   bit 13     midpoint at or above stroke center
//   bit 14     presence
// Unused slots are zero.
struct EncodedVector {
  std::vector<std::uint8_t> bits;
  EncodingLayout layout;

  std::vector<double> as_reals() const;
  friend bool operator==(const EncodedVector&, const EncodedVector&) = default;
};

struct Encoding {
  EncodedVector vector;
  // Tokens beyond max_tokens that were dropped.
  std::size_t truncated = 0;
};

std::size_t direction_bin(double degrees);
Encoding encode(std::span<const TokenFeatures> tokens,
                const EncodingLayout& layout = {});

// Stroke-count cluster: min(stroke count, 4).
struct StrokeCountGroup {
  int cluster_id = 1;
  std::size_t stroke_count = 1;
};

inline constexpr int kClusterCount = 4;

StrokeCountGroup group_of(const InkSample& sample);

std::string_view to_string(LengthCategory c);
std::string_view to_string(Orientation o);

// CSV dump: sample_id,stroke,token,start,end,ratio_pct,category,
// direction_deg,mid_x,mid_y,orientation
std::string feature_csv_header();
void append_feature_csv(std::string& out, std::size_t sample_id,
                        std::span<const TokenFeatures> features);


}  // namespace inkrec
