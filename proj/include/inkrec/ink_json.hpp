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

// JSON conversions for ink types, shared by the file format, the segment dump
// and the HTTP service.

#include <cstddef>
#include <string>
#include <vector>

#include "inkrec/ink.hpp"
#include "json.hpp"

namespace inkrec {

using json = nlohmann::json;

// Parses one stroke array; `where` prefixes error messages. Throws ParseError
// on a schema problem. Duplicates are dropped and counted in `dropped`;
// returns the raw points (the caller builds the Stroke).
std::vector<InkPoint> stroke_points_from_json(const json& stroke,
                                              const std::string& where,
                                              std::size_t& dropped);

json stroke_to_json(const Stroke& stroke);
json sample_to_json(const InkSample& sample);

}  // namespace inkrec
