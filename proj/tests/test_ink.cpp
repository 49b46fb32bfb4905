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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "inkrec/error.hpp"
#include "inkrec/ink.hpp"
#include "inkrec/ink_format.hpp"

using namespace inkrec;

TEST_CASE("stroke invariants") {
  CHECK_THROWS_AS(Stroke({{0, 0, std::nullopt}}), std::invalid_argument);
  CHECK_THROWS_AS(Stroke({{0, 0, 1.0}, {1, 1, std::nullopt}}), std::invalid_argument);
  CHECK_THROWS_AS(Stroke({{0, 0, 5.0}, {1, 1, 4.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Stroke({{0, NAN, std::nullopt}, {1, 1, std::nullopt}}), std::invalid_argument);
  CHECK_NOTHROW(Stroke({{0, 0, 1.0}, {1, 1, 1.0}}));
  CHECK_THROWS_AS(InkSample("", {Stroke({{0, 0}, {1, 1}})}), std::invalid_argument);
  CHECK_THROWS_AS(InkSample("a", {}), std::invalid_argument);
}

TEST_CASE("consecutive duplicates are dropped") {
  std::vector<InkPoint> pts = {{0, 0}, {0, 0}, {1, 1}, {1, 1}, {0, 0}};
  CHECK(drop_consecutive_duplicates(pts) == 2);
  CHECK(pts.size() == 3);
}

TEST_CASE("ink format round trip is exact") {
  const InkSample a("ب", {Stroke({{0.1, 0.2, 0.0}, {0.30000000000000004, 1e-17, 10.0}}),
                          Stroke({{1, 2}, {3, 4}, {5, 6}})});
  const InkSample b("unlabeled", {Stroke({{-1.5, 2.25}, {7, 8}})});
  const std::vector<InkSample> samples = {a, b};
  const std::string text = write_ink_file(samples);
  const ParsedInk back = parse_ink_file(text);
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[0].label() == "ب");
  CHECK(back.samples[0].strokes()[0] == a.strokes()[0]);
  CHECK(back.samples[0].strokes()[1] == a.strokes()[1]);
  CHECK(back.samples[1].is_unlabeled());
  CHECK(write_ink_file(back.samples) == text);
}

TEST_CASE("ink format diagnostics") {
  SUBCASE("syntax error carries a position") {
    try {
      parse_ink_file("{\"version\":1,\n \"samples\": [}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("invariant failure names the sample") {
    try {
      parse_ink_file(R"({"version":1,"samples":[{"label":"a","strokes":[[[0,0],[1,1]]]},
                      {"label":"b","strokes":[[[0,0]]]}]})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.sample_index() == 1);
    }
  }
  CHECK_THROWS_AS(parse_ink_file(R"({"version":2,"samples":[]})"), ParseError);
  CHECK_THROWS_AS(parse_ink_file(R"({"version":1,"samples":[{"label":"a","strokes":[[[0,0,1],[1,1]]]}]})"),
                  ParseError);
}

TEST_CASE("duplicates are removed at ingest and counted") {
  const ParsedInk p = parse_ink_file(
      R"({"version":1,"samples":[{"label":"a","strokes":[[[0,0],[0,0],[1,1]]]}]})");
  CHECK(p.duplicates_dropped == 1);
  CHECK(p.samples[0].strokes()[0].size() == 2);
}
