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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inkrec/ink.hpp"

namespace inkrec {

inline constexpr int kInkFormatVersion = 1;

struct ParsedInk {
  std::vector<InkSample> samples;
  // Consecutive duplicate points dropped while reading.
  std::size_t duplicates_dropped = 0;
};

// Reads the UTF-8 JSON ink format:
//   {"version": 1, "samples": [{"label": "...", "strokes": [[[x, y], ...]]}]}
// Points are [x, y] or [x, y, t]; one stroke may not mix the two.
// Throws ParseError for bad syntax or schema, ValidationError when a sample
// breaks an invariant after duplicate removal.
ParsedInk parse_ink_file(std::string_view text);

// Serializes samples; doubles keep their shortest round-trip representation.
std::string write_ink_file(std::span<const InkSample> samples);

ParsedInk read_ink_file(const std::filesystem::path& path);
void save_ink_file(const std::filesystem::path& path,
                   std::span<const InkSample> samples);

// Whole-file helpers shared by the CLI and service.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace inkrec
