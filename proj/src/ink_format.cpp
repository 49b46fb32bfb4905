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

#include "inkrec/ink_format.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "inkrec/error.hpp"
#include "inkrec/ink_json.hpp"

namespace inkrec {
namespace {

struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

// nlohmann reports a 1-based byte offset of the failing character.
TextPosition locate(std::string_view text, std::size_t byte) {
  TextPosition pos;
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

[[noreturn]] void schema_error(const std::string& what) {
  throw ParseError(what, 0, 0);
}

double number_at(const json& value, const std::string& where) {
  if (!value.is_number()) schema_error(where + ": expected a number");
  return value.get<double>();
}

}  // namespace

std::vector<InkPoint> stroke_points_from_json(const json& stroke,
                                              const std::string& where,
                                              std::size_t& dropped) {
  if (!stroke.is_array()) schema_error(where + ": stroke must be an array");
  std::vector<InkPoint> points;
  points.reserve(stroke.size());
  std::size_t arity = 0;
  for (std::size_t j = 0; j < stroke.size(); ++j) {
    const json& p = stroke[j];
    const std::string at = where + "[" + std::to_string(j) + "]";
    if (!p.is_array() || (p.size() != 2 && p.size() != 3)) {
      schema_error(at + ": point must be [x, y] or [x, y, t]");
    }
    if (arity == 0) {
      arity = p.size();
    } else if (p.size() != arity) {
      schema_error(at + ": stroke mixes 2- and 3-element points");
    }
    InkPoint point{number_at(p[0], at), number_at(p[1], at), std::nullopt};
    if (p.size() == 3) point.t = number_at(p[2], at);
    points.push_back(point);
  }
  dropped += drop_consecutive_duplicates(points);
  return points;
}

json stroke_to_json(const Stroke& stroke) {
  json out = json::array();
  for (const InkPoint& p : stroke.points()) {
    if (p.t) {
      out.push_back({p.x, p.y, *p.t});
    } else {
      out.push_back({p.x, p.y});
    }
  }
  return out;
}

json sample_to_json(const InkSample& sample) {
  json strokes = json::array();
  for (const Stroke& s : sample.strokes()) strokes.push_back(stroke_to_json(s));
  return json{{"label", sample.label()}, {"strokes", std::move(strokes)}};
}

ParsedInk parse_ink_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const TextPosition pos = locate(text, e.byte);
    throw ParseError("ink file: syntax error at line " +
                         std::to_string(pos.line) + ", column " +
                         std::to_string(pos.column) + ": " + e.what(),
                     pos.line, pos.column);
  }
  if (!doc.is_object()) schema_error("ink file: top level must be an object");
  const auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer()) {
    schema_error("ink file: missing integer \"version\"");
  }
  if (version->get<long long>() != kInkFormatVersion) {
    schema_error("ink file: unsupported version " + version->dump());
  }
  const auto samples = doc.find("samples");
  if (samples == doc.end() || !samples->is_array()) {
    schema_error("ink file: missing \"samples\" array");
  }

  ParsedInk parsed;
  parsed.samples.reserve(samples->size());
  for (std::size_t i = 0; i < samples->size(); ++i) {
    const json& s = (*samples)[i];
    const std::string where = "samples[" + std::to_string(i) + "]";
    if (!s.is_object()) schema_error(where + ": sample must be an object");
    const auto label = s.find("label");
    if (label == s.end() || !label->is_string()) {
      schema_error(where + ": missing string \"label\"");
    }
    const auto strokes = s.find("strokes");
    if (strokes == s.end() || !strokes->is_array()) {
      schema_error(where + ": missing \"strokes\" array");
    }
    std::vector<Stroke> built;
    built.reserve(strokes->size());
    for (std::size_t k = 0; k < strokes->size(); ++k) {
      const std::string field = "strokes[" + std::to_string(k) + "]";
      auto points = stroke_points_from_json((*strokes)[k], where + "." + field,
                                            parsed.duplicates_dropped);
      try {
        built.emplace_back(std::move(points));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(where + "." + field + ": " + e.what(), i, field);
      }
    }
    try {
      parsed.samples.emplace_back(label->get<std::string>(), std::move(built));
    } catch (const std::invalid_argument& e) {
      const std::string field = label->get<std::string>().empty() ? "label" : "strokes";
      throw ValidationError(where + ": " + e.what(), i, field);
    }
  }
  return parsed;
}

std::string write_ink_file(std::span<const InkSample> samples) {
  std::string out = "{\"version\":" + std::to_string(kInkFormatVersion) +
                    ",\"samples\":[";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += sample_to_json(samples[i]).dump();
  }
  out += samples.empty() ? "]}\n" : "\n]}\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing " + path.string());
}

ParsedInk read_ink_file(const std::filesystem::path& path) {
  return parse_ink_file(read_text_file(path));
}

void save_ink_file(const std::filesystem::path& path,
                   std::span<const InkSample> samples) {
  write_text_file(path, write_ink_file(samples));
}

}  // namespace inkrec
