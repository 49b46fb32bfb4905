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

#include "inkrec/recognizer.hpp"

#include <algorithm>
#include <map>

#include "inkrec/error.hpp"
#include "inkrec/ink_format.hpp"
#include "inkrec/rng.hpp"

namespace inkrec {

void PipelineConfig::validate() const {
  window_half_width(1, window_fraction);
  preprocess.validate();
  layout().validate();
  if (hidden == 0) throw ConfigError("hidden width must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("sigmoid slope must be positive");
  }
  train.validate();
}

json to_json(const PipelineConfig& c) {
  return {
      {"window_fraction", c.window_fraction},
      {"smoothing_passes", c.preprocess.passes},
      {"max_tokens", c.max_tokens},
      {"hidden", c.hidden},
      {"lambda", c.lambda},
      {"learning_rate", c.train.learning_rate},
      {"momentum", c.train.momentum},
      {"internal_threshold", c.train.internal_threshold},
      {"max_epochs", c.train.max_epochs},
      {"target_error", c.train.target_error},
      {"seed", c.train.seed},
  };
}

PipelineConfig pipeline_config_from_json(const json& doc) {
  PipelineConfig c;
  try {
    c.window_fraction = doc.at("window_fraction").get<double>();
    c.preprocess.passes = doc.at("smoothing_passes").get<int>();
    c.max_tokens = doc.at("max_tokens").get<std::size_t>();
    c.hidden = doc.at("hidden").get<std::size_t>();
    c.lambda = doc.at("lambda").get<double>();
    c.train.learning_rate = doc.at("learning_rate").get<double>();
    c.train.momentum = doc.at("momentum").get<double>();
    c.train.internal_threshold = doc.at("internal_threshold").get<double>();
    c.train.max_epochs = doc.at("max_epochs").get<std::size_t>();
    c.train.target_error = doc.at("target_error").get<double>();
    c.train.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("pipeline config: ") + e.what(), 0, 0);
  }
  c.validate();
  return c;
}

PreparedSample prepare(const InkSample& sample, const PipelineConfig& config) {
  PreparedSample p{smooth_sample(sample, config.preprocess), group_of(sample).cluster_id,
                   {}, {}, {}};
  p.segmentation = segment_sample(p.smoothed, config.window_fraction);
  p.features = extract_features(p.smoothed, p.segmentation);
  p.encoding = encode(p.features, config.layout());
  return p;
}

std::vector<PreparedSample> prepare_all(std::span<const InkSample> samples,
                                        const PipelineConfig& config) {
  config.validate();
  std::vector<PreparedSample> out;
  out.reserve(samples.size());
  for (const InkSample& s : samples) out.push_back(prepare(s, config));
  return out;
}

Recognizer::Recognizer(PipelineConfig config,
                       std::vector<ClusterClassifier> classifiers,
                       std::vector<ClusterTrainingSummary> summaries)
    : config_(std::move(config)),
      classifiers_(std::move(classifiers)),
      summaries_(std::move(summaries)) {
  std::sort(classifiers_.begin(), classifiers_.end(),
            [](const auto& a, const auto& b) { return a.cluster_id < b.cluster_id; });
  for (const ClusterClassifier& c : classifiers_) {
    if (c.model.sizes().inputs != config_.layout().width()) {
      throw ShapeError("cluster " + std::to_string(c.cluster_id) +
                       " model expects " + std::to_string(c.model.sizes().inputs) +
                       " inputs; pipeline encodes " +
                       std::to_string(config_.layout().width()));
    }
  }
}

Recognizer Recognizer::train(std::span<const PreparedSample> samples,
                             const PipelineConfig& config,
                             std::span<const std::size_t> indices) {
  config.validate();
  std::vector<std::size_t> selected(indices.begin(), indices.end());
  if (selected.empty()) {
    selected.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) selected[i] = i;
  }
  if (selected.empty()) throw Error("train: no samples");

  std::map<int, std::vector<std::size_t>> by_cluster;
  for (const std::size_t i : selected) {
    if (i >= samples.size()) throw Error("train: sample index out of range");
    by_cluster[samples[i].cluster_id].push_back(i);
  }

  std::vector<ClusterClassifier> classifiers;
  std::vector<ClusterTrainingSummary> summaries;
  for (const auto& [cluster, members] : by_cluster) {
    std::vector<std::string> labels;
    for (const std::size_t i : members) labels.push_back(samples[i].label());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::vector<TrainingExample> examples;
    examples.reserve(members.size());
    for (const std::size_t i : members) {
      TrainingExample ex{samples[i].encoding.vector.as_reals(),
                         std::vector<double>(labels.size(), 0.0)};
      const auto pos = std::lower_bound(labels.begin(), labels.end(), samples[i].label());
      ex.target[static_cast<std::size_t>(pos - labels.begin())] = 1.0;
      examples.push_back(std::move(ex));
    }

    const auto stream = static_cast<std::uint64_t>(cluster);
    TrainConfig tc = config.train;
    tc.seed = derive_seed(config.train.seed, 2 * stream + 1);
    MlpModel init = init_weights({config.layout().width(), config.hidden, labels.size()},
                                 tc.learning_rate, derive_seed(config.train.seed, 2 * stream),
                                 config.lambda, tc.internal_threshold);
    TrainResult result = inkrec::train(std::move(init), examples, tc);
    summaries.push_back({cluster, members.size(), result.history.size(),
                         result.history.back()});
    classifiers.push_back({cluster, std::move(labels), std::move(result.model)});
  }
  return Recognizer(config, std::move(classifiers), std::move(summaries));
}

const ClusterClassifier* Recognizer::classifier_for(int cluster_id) const {
  for (const ClusterClassifier& c : classifiers_) {
    if (c.cluster_id == cluster_id) return &c;
  }
  return nullptr;
}

Recognition Recognizer::classify(const PreparedSample& sample) const {
  Recognition r;
  r.cluster_id = sample.cluster_id;
  const ClusterClassifier* c = classifier_for(sample.cluster_id);
  if (c == nullptr) return r;
  const std::vector<double> outputs =
      forward(c->model, sample.encoding.vector.as_reals());
  const Prediction p = predict_from_outputs(outputs);
  r.label = c->class_labels[p.class_index];
  r.confidence = p.confidence;
  for (std::size_t l = 0; l < outputs.size(); ++l) {
    r.scores.push_back({c->class_labels[l], outputs[l]});
  }
  return r;
}

Recognition Recognizer::recognize(const InkSample& sample) const {
  return classify(prepare(sample, config_));
}

json Recognizer::manifest() const {
  json clusters = json::array();
  for (const ClusterClassifier& c : classifiers_) {
    json entry = {
        {"cluster_id", c.cluster_id},
        {"file", "cluster_" + std::to_string(c.cluster_id) + ".json"},
        {"class_labels", c.class_labels},
        {"layer_sizes",
         {c.model.sizes().inputs, c.model.sizes().hidden, c.model.sizes().outputs}},
    };
    for (const ClusterTrainingSummary& s : summaries_) {
      if (s.cluster_id != c.cluster_id) continue;
      entry["training_samples"] = s.samples;
      entry["epochs"] = s.epochs;
      entry["final_loss"] = s.final_loss;
    }
    clusters.push_back(std::move(entry));
  }
  return {{"version", kModelFormatVersion},
          {"seed", config_.train.seed},
          {"pipeline", to_json(config_)},
          {"clusters", std::move(clusters)}};
}

void Recognizer::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const ClusterClassifier& c : classifiers_) {
    write_text_file(dir / ("cluster_" + std::to_string(c.cluster_id) + ".json"),
                    save_model(c));
  }
  write_text_file(dir / "manifest.json", manifest().dump(2) + "\n");
}

Recognizer Recognizer::load(const std::filesystem::path& dir) {
  json doc;
  try {
    doc = json::parse(read_text_file(dir / "manifest.json"));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0, e.byte);
  }
  PipelineConfig config = pipeline_config_from_json(doc.at("pipeline"));
  std::vector<ClusterClassifier> classifiers;
  std::vector<ClusterTrainingSummary> summaries;
  for (const json& entry : doc.at("clusters")) {
    ClusterClassifier c =
        load_model(read_text_file(dir / entry.at("file").get<std::string>()));
    if (c.cluster_id != entry.at("cluster_id").get<int>()) {
      throw ShapeError("manifest and model file disagree on cluster id");
    }
    if (entry.contains("epochs")) {
      summaries.push_back({c.cluster_id, entry.value("training_samples", std::size_t{0}),
                           entry.at("epochs").get<std::size_t>(),
                           entry.value("final_loss", 0.0)});
    }
    classifiers.push_back(std::move(c));
  }
  return Recognizer(std::move(config), std::move(classifiers), std::move(summaries));
}

json segmentation_to_json(const SampleSegmentation& seg) {
  json strokes = json::array();
  for (const StrokeSegmentation& s : seg.strokes) {
    json cps = json::array();
    for (const CriticalPoint& cp : s.scan.points) {
      cps.push_back({{"index", cp.point_index}, {"kind", to_string(cp.kind)}});
    }
    json tokens = json::array();
    for (const Token& t : s.tokens) tokens.push_back({{"start", t.start}, {"end", t.end}});
    strokes.push_back({{"direction_length", to_string(s.direction.value)},
                       {"raw_length", s.direction.raw_length},
                       {"window", s.scan.window},
                       {"too_short", s.scan.too_short},
                       {"critical_points", std::move(cps)},
                       {"tokens", std::move(tokens)}});
  }
  return strokes;
}

json features_to_json(std::span<const TokenFeatures> features) {
  json out = json::array();
  for (const TokenFeatures& f : features) {
    out.push_back({{"stroke", f.stroke_index},
                   {"token", f.token_index},
                   {"start", f.start},
                   {"end", f.end},
                   {"ratio_pct", f.length_ratio_pct},
                   {"category", to_string(f.length_category)},
                   {"direction_deg", f.direction_deg},
                   {"mid_x", f.midpoint.x},
                   {"mid_y", f.midpoint.y},
                   {"orientation", to_string(f.orientation)},
                   {"above_stroke_center", f.above_stroke_center}});
  }
  return out;
}

SampleSegmentation segmentation_from_json(const json& strokes,
                                          const InkSample& sample) {
  if (!strokes.is_array() || strokes.size() != sample.stroke_count()) {
    throw ParseError("segmentation: expected one entry per stroke", 0, 0);
  }
  SampleSegmentation seg;
  try {
    for (std::size_t i = 0; i < strokes.size(); ++i) {
      const json& entry = strokes[i];
      const std::size_t n = sample.strokes()[i].size();
      StrokeSegmentation s;
      s.direction.value = entry.at("direction_length").get<std::string>() == "horizontal"
                              ? Direction::kHorizontal
                              : Direction::kVertical;
      s.direction.raw_length = entry.at("raw_length").get<double>();
      s.scan.window = entry.at("window").get<std::size_t>();
      s.scan.too_short = entry.at("too_short").get<bool>();
      for (const json& cp : entry.at("critical_points")) {
        s.scan.points.push_back({i, cp.at("index").get<std::size_t>(),
                                 cp.at("kind").get<std::string>() == "maximum"
                                     ? ExtremumKind::kMaximum
                                     : ExtremumKind::kMinimum});
      }
      std::size_t expected_start = 0;
      for (const json& t : entry.at("tokens")) {
        Token token{i, t.at("start").get<std::size_t>(), t.at("end").get<std::size_t>()};
        if (token.start != expected_start || token.end < token.start || token.end >= n) {
          throw ParseError("segmentation: tokens of stroke " + std::to_string(i) +
                               " do not tile it",
                           0, 0);
        }
        expected_start = token.end + 1;
        s.tokens.push_back(token);
      }
      if (expected_start != n) {
        throw ParseError("segmentation: tokens of stroke " + std::to_string(i) +
                             " do not cover it",
                         0, 0);
      }
      seg.strokes.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("segmentation: ") + e.what(), 0, 0);
  }
  return seg;
}

}  // namespace inkrec
