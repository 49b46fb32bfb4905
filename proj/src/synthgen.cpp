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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "inkrec/error.hpp"
#include "inkrec/rng.hpp"

namespace inkrec {
namespace {

constexpr std::size_t kMinPoints = 40;
constexpr std::size_t kMaxPoints = 120;
constexpr double kMinScale = 0.8;
constexpr double kMaxScale = 1.2;
constexpr double kMaxRotationDeg = 5.0;
constexpr double kSampleIntervalMs = 10.0;
constexpr double kPenUpMs = 100.0;

double polyline_length(std::span<const Point2> poly) {
  double total = 0.0;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    total += std::hypot(poly[i].x - poly[i - 1].x, poly[i].y - poly[i - 1].y);
  }
  return total;
}

std::vector<Point2> resample(std::span<const Point2> poly, std::size_t n) {
  const double total = polyline_length(poly);
  std::vector<Point2> out;
  out.reserve(n);
  std::size_t seg = 1;
  double walked = 0.0;  // arc length at poly[seg - 1]
  for (std::size_t k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    double seg_len = std::hypot(poly[seg].x - poly[seg - 1].x,
                                poly[seg].y - poly[seg - 1].y);
    while (seg + 1 < poly.size() && walked + seg_len < target) {
      walked += seg_len;
      ++seg;
      seg_len = std::hypot(poly[seg].x - poly[seg - 1].x,
                           poly[seg].y - poly[seg - 1].y);
    }
    const double u = seg_len > 0.0 ? std::clamp((target - walked) / seg_len, 0.0, 1.0) : 0.0;
    out.push_back({poly[seg - 1].x + u * (poly[seg].x - poly[seg - 1].x),
                   poly[seg - 1].y + u * (poly[seg].y - poly[seg - 1].y)});
  }
  out.back() = poly.back();
  return out;
}

double template_diagonal(const TemplateSpec& t) {
  double min_x = 1.0, max_x = 0.0, min_y = 1.0, max_y = 0.0;
  for (const auto& stroke : t.strokes) {
    for (const Point2& p : stroke) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  return std::hypot(max_x - min_x, max_y - min_y);
}

InkSample generate_one(const TemplateSpec& t, double noise, std::uint64_t seed) {
  Rng rng(seed);
  const double sigma = noise * template_diagonal(t);
  const double scale = rng.uniform(kMinScale, kMaxScale);
  const double theta =
      rng.uniform(-kMaxRotationDeg, kMaxRotationDeg) * std::numbers::pi / 180.0;
  const double c = std::cos(theta), s = std::sin(theta);

  std::vector<Stroke> strokes;
  strokes.reserve(t.strokes.size());
  double clock = 0.0;
  for (const auto& poly : t.strokes) {
    const auto n = static_cast<std::size_t>(rng.between(kMinPoints, kMaxPoints));
    std::vector<InkPoint> points;
    points.reserve(n);
    // Jitter moves the template's control points; the pen path between
    // them stays smooth, as a hand's deviation from a shape does.
    std::vector<Point2> ctrl(poly.begin(), poly.end());
    for (Point2& p : ctrl) {
      p.x += sigma * rng.normal();
      p.y += sigma * rng.normal();
    }
    for (const Point2& p : resample(ctrl, n)) {
      const double jx = p.x - 0.5;
      const double jy = p.y - 0.5;
      points.push_back({0.5 + scale * (c * jx - s * jy),
                        0.5 + scale * (s * jx + c * jy), clock});
      clock += kSampleIntervalMs;
    }
    clock += kPenUpMs;
    drop_consecutive_duplicates(points);
    strokes.emplace_back(std::move(points));
  }
  return InkSample(t.class_label, std::move(strokes));
}

}  // namespace

void TemplateSpec::validate() const {
  if (class_label.empty()) throw ConfigError("template without a label");
  if (strokes.empty()) throw ConfigError("template '" + class_label + "' has no strokes");
  for (const auto& poly : strokes) {
    if (poly.size() < 2 || !(polyline_length(poly) > 0.0)) {
      throw ConfigError("template '" + class_label + "' has a degenerate stroke");
    }
    for (const Point2& p : poly) {
      if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
        throw ConfigError("template '" + class_label +
                          "' has a control point outside the unit box");
      }
    }
  }
}

std::vector<InkSample> generate(std::span<const TemplateSpec> templates,
                                std::size_t samples_per_class, double noise,
                                std::uint64_t seed) {
  if (!(noise >= 0.0 && noise <= kMaxNoise)) {
    throw ConfigError("noise must lie in [0, 0.1]");
  }
  if (samples_per_class == 0) throw ConfigError("samples_per_class must be >= 1");
  for (const TemplateSpec& t : templates) t.validate();

  std::vector<InkSample> out;
  out.reserve(templates.size() * samples_per_class);
  for (std::size_t c = 0; c < templates.size(); ++c) {
    for (std::size_t i = 0; i < samples_per_class; ++i) {
      const std::uint64_t stream = (static_cast<std::uint64_t>(c) << 32) | i;
      out.push_back(generate_one(templates[c], noise, derive_seed(seed, stream)));
    }
  }
  return out;
}

}  // namespace inkrec
