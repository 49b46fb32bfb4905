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

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "inkrec/ink_format.hpp"
#include "inkrec/ink_json.hpp"
#include "inkrec/recognizer.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "inkrec_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(INKREC_CLI) + " " + args + " > " +
                          (workdir() / "stdout.txt").string() + " 2> " +
                          (workdir() / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string path(const char* name) { return (workdir() / name).string(); }

}  // namespace

TEST_CASE("stages compose through files") {
  REQUIRE(run("gen-synthetic --classes 12 --per-class 6 --seed 3 --out " + path("ink.json")) == 0);
  REQUIRE(run("preprocess --in " + path("ink.json") + " --out " + path("smooth.json")) == 0);
  REQUIRE(run("segment --in " + path("smooth.json") + " --out " + path("seg.json")) == 0);
  REQUIRE(run("featurize --in " + path("seg.json") + " --out " + path("a.csv")) == 0);
  REQUIRE(run("featurize --in " + path("smooth.json") + " --out " + path("b.csv")) == 0);
  CHECK(inkrec::read_text_file(path("a.csv")) == inkrec::read_text_file(path("b.csv")));
  CHECK(inkrec::read_ink_file(path("seg.json")).samples.size() == 72);

  // The staged files reproduce the in-process pipeline exactly.
  const auto prepared =
      inkrec::prepare_all(inkrec::read_ink_file(path("ink.json")).samples, inkrec::PipelineConfig{});
  std::string direct = inkrec::feature_csv_header();
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    inkrec::append_feature_csv(direct, i, prepared[i].features);
  }
  CHECK(inkrec::read_text_file(path("a.csv")) == direct);

  REQUIRE(run("train --in " + path("ink.json") + " --hidden 16 --models " + path("models")) == 0);
  CHECK(fs::exists(workdir() / "models" / "manifest.json"));
  CHECK(run("recognize --models " + path("models") + " --in " + path("ink.json") +
            " --sample 0") == 0);
  CHECK(inkrec::read_text_file(path("stdout.txt")).find("label") != std::string::npos);
  // Sample 30 is the first of the sixth class, which shares cluster 2 with two others.
  REQUIRE(run("recognize --json --models " + path("models") + " --in " + path("ink.json") +
              " --sample 30") == 0);
  const inkrec::json rec = inkrec::json::parse(inkrec::read_text_file(path("stdout.txt")));
  CHECK(rec["label"] == prepared[30].label());
  CHECK(rec["confidence"].get<double>() > 1.0 / 3);
  CHECK(run("eval --in " + path("ink.json") + " --hidden 16 --protocol kfold --k 2") == 0);
  CHECK(run("token-stats --in " + path("ink.json")) == 0);
}

TEST_CASE("a monotone stroke is one token") {
  inkrec::write_text_file(path("mono.json"),
      R"({"version":1,"samples":[{"label":"unlabeled","strokes":[[[0,0],[1,1],[2,2],[3,3],[4,4],[5,5]]]}]})");
  REQUIRE(run("segment --in " + path("mono.json") + " --out " + path("mono_seg.json")) == 0);
  const auto doc = inkrec::json::parse(inkrec::read_text_file(path("mono_seg.json")));
  const auto& stroke = doc["samples"][0]["segmentation"][0];
  CHECK(stroke["critical_points"].empty());
  CHECK(stroke["tokens"].size() == 1);
}

TEST_CASE("errors exit nonzero with a diagnostic") {
  CHECK(run("segment --in " + path("missing.json")) != 0);
  CHECK(!inkrec::read_text_file(path("stderr.txt")).empty());
  CHECK(run("segment --in " + path("ink.json") + " --window-fraction 2") != 0);
  CHECK(run("gen-synthetic --noise 0.5") != 0);
  CHECK(run("no-such-command") != 0);
}
