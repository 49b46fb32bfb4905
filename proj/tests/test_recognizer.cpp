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

#include <filesystem>

#include "doctest.h"
#include "inkrec/error.hpp"
#include "inkrec/recognizer.hpp"
#include "inkrec/synthgen.hpp"

using namespace inkrec;

namespace {

PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.hidden = 16;
  return cfg;
}

const std::vector<InkSample>& corpus() {
  static const std::vector<InkSample> c = generate(default_templates(), 8, 0.02, 77);
  return c;
}

}  // namespace

TEST_CASE("pipeline config validation and JSON") {
  PipelineConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  CHECK(to_json(pipeline_config_from_json(to_json(cfg))) == to_json(cfg));
  cfg.window_fraction = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("train, save, load and recognize") {
  const PipelineConfig cfg = small_config();
  const auto prepared = prepare_all(corpus(), cfg);
  const Recognizer r = Recognizer::train(prepared, cfg);
  CHECK(r.classifiers().size() == 4);
  CHECK(r.manifest()["clusters"].size() == 4);

  std::size_t correct = 0;
  for (const InkSample& s : corpus()) correct += r.recognize(s).label == s.label();
  CHECK(correct >= corpus().size() * 9 / 10);

  const auto dir = std::filesystem::temp_directory_path() / "inkrec_recognizer_test";
  std::filesystem::remove_all(dir);
  r.save(dir);
  const Recognizer back = Recognizer::load(dir);
  CHECK(back.classifiers() == r.classifiers());
  for (const InkSample& s : corpus()) {
    const Recognition a = r.recognize(s), b = back.recognize(s);
    CHECK(a.label == b.label);
    CHECK(a.confidence == b.confidence);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("training is reproducible") {
  const PipelineConfig cfg = small_config();
  const auto prepared = prepare_all(corpus(), cfg);
  CHECK(Recognizer::train(prepared, cfg).classifiers() ==
        Recognizer::train(prepared, cfg).classifiers());
}

TEST_CASE("a cluster without training data yields no label") {
  const PipelineConfig cfg = small_config();
  const auto prepared = prepare_all(corpus(), cfg);
  std::vector<std::size_t> only_one_stroke;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    if (prepared[i].cluster_id == 1) only_one_stroke.push_back(i);
  }
  const Recognizer r = Recognizer::train(prepared, cfg, only_one_stroke);
  CHECK(r.classifiers().size() == 1);
  const InkSample two("unlabeled", {corpus()[0].strokes()[0], corpus()[0].strokes()[0]});
  const Recognition rec = r.recognize(two);
  CHECK(rec.cluster_id == 2);
  CHECK(rec.label.empty());
}

TEST_CASE("segmentation JSON round trip") {
  const PipelineConfig cfg = small_config();
  for (const InkSample& s : corpus()) {
    const SampleSegmentation seg = segment_sample(s, cfg.window_fraction);
    const SampleSegmentation back = segmentation_from_json(segmentation_to_json(seg), s);
    CHECK(segmentation_to_json(back) == segmentation_to_json(seg));
  }
  json broken = segmentation_to_json(segment_sample(corpus()[0], 0.05));
  broken[0]["tokens"][0]["end"] = 0;
  CHECK_THROWS_AS(segmentation_from_json(broken, corpus()[0]), ParseError);
}
