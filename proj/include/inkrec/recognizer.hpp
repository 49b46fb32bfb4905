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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkrec/features.hpp"
#include "inkrec/ink.hpp"
#include "inkrec/ink_json.hpp"
#include "inkrec/mlp.hpp"
#include "inkrec/preprocess.hpp"
#include "inkrec/segmentation.hpp"

namespace inkrec {

// Every tunable of the end-to-end pipeline.
struct PipelineConfig {
  double window_fraction = kDefaultWindowFraction;
  PreprocessConfig preprocess;
  std::size_t max_tokens = kDefaultMaxTokens;
  std::size_t hidden = 64;
  double lambda = 1.0;
  TrainConfig train;

  // Throws ConfigError on any out-of-range field.
  void validate() const;
  EncodingLayout layout() const { return {max_tokens, kBitsPerToken}; }
};

json to_json(const PipelineConfig& config);
PipelineConfig pipeline_config_from_json(const json& doc);

// A sample taken through smoothing, segmentation and feature extraction.
struct PreparedSample {
  InkSample smoothed;
  int cluster_id = 1;
  SampleSegmentation segmentation;
  std::vector<TokenFeatures> features;
  Encoding encoding;

  const std::string& label() const { return smoothed.label(); }
};

PreparedSample prepare(const InkSample& sample, const PipelineConfig& config);
std::vector<PreparedSample> prepare_all(std::span<const InkSample> samples,
                                        const PipelineConfig& config);

struct ClassScore {
  std::string label;
  double score = 0.0;
};

struct Recognition {
  // Empty when no classifier was trained for the sample's cluster.
  std::string label;
  double confidence = 0.0;
  int cluster_id = 1;
  // Raw output activations, in the classifier's label order.
  std::vector<ClassScore> scores;
};

struct ClusterTrainingSummary {
  int cluster_id = 1;
  std::size_t samples = 0;
  std::size_t epochs = 0;
  double final_loss = 0.0;
};

// One MLP per stroke-count cluster; samples are routed by stroke count.
class Recognizer {
 public:
  // Trains on the selected samples (all of them when `indices` is empty).
  // Each cluster's output units are its sorted distinct labels. Clusters with
  // no training samples get no classifier.
  static Recognizer train(std::span<const PreparedSample> samples,
                          const PipelineConfig& config,
                          std::span<const std::size_t> indices = {});

  Recognizer(PipelineConfig config, std::vector<ClusterClassifier> classifiers,
             std::vector<ClusterTrainingSummary> summaries = {});

  Recognition classify(const PreparedSample& sample) const;
  // Full pipeline from raw ink.
  Recognition recognize(const InkSample& sample) const;

  const PipelineConfig& config() const { return config_; }
  const std::vector<ClusterClassifier>& classifiers() const { return classifiers_; }
  const ClusterClassifier* classifier_for(int cluster_id) const;
  const std::vector<ClusterTrainingSummary>& summaries() const { return summaries_; }

  json manifest() const;
  // Writes manifest.json plus cluster_<k>.json into `dir` (created if needed).
  void save(const std::filesystem::path& dir) const;
  static Recognizer load(const std::filesystem::path& dir);

 private:
  PipelineConfig config_;
  std::vector<ClusterClassifier> classifiers_;
  std::vector<ClusterTrainingSummary> summaries_;
};

// Segmentation and feature dump of one prepared sample, as emitted by the
// `segment` subcommand and the HTTP service.
json segmentation_to_json(const SampleSegmentation& seg);
json features_to_json(std::span<const TokenFeatures> features);

// Inverse of segmentation_to_json. Throws ParseError if the document does not
// match the sample's strokes or a stroke's tokens do not cover it exactly.
SampleSegmentation segmentation_from_json(const json& strokes,
                                          const InkSample& sample);

}  // namespace inkrec
