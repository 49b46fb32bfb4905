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

#include "inkrec/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "inkrec/error.hpp"
#include "inkrec/ink_json.hpp"
#include "inkrec/rng.hpp"
#include "inkrec/simd.hpp"
#include "inkrec/text.hpp"

namespace inkrec {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
    throw ConfigError("learning rate must lie in (0, 1)");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ConfigError("momentum must lie in [0, 1)");
  }
  if (!std::isfinite(internal_threshold)) {
    throw ConfigError("internal threshold must be finite");
  }
  if (max_epochs == 0) throw ConfigError("max_epochs must be positive");
  if (!(target_error >= 0.0)) throw ConfigError("target_error must be >= 0");
}

MlpModel::MlpModel(LayerSizes sizes, std::vector<double> weights_hidden,
                   std::vector<double> weights_output, double lambda,
                   double internal_threshold)
    : sizes_(sizes),
      weights_hidden_(std::move(weights_hidden)),
      weights_output_(std::move(weights_output)),
      lambda_(lambda),
      internal_threshold_(internal_threshold) {
  if (sizes_.inputs == 0 || sizes_.hidden == 0 || sizes_.outputs == 0) {
    throw ShapeError("layer sizes must be positive");
  }
  if (weights_hidden_.size() != sizes_.hidden * (sizes_.inputs + 1)) {
    throw ShapeError("hidden weights: expected " +
                     std::to_string(sizes_.hidden * (sizes_.inputs + 1)) +
                     " values, got " + std::to_string(weights_hidden_.size()));
  }
  if (weights_output_.size() != sizes_.outputs * (sizes_.hidden + 1)) {
    throw ShapeError("output weights: expected " +
                     std::to_string(sizes_.outputs * (sizes_.hidden + 1)) +
                     " values, got " + std::to_string(weights_output_.size()));
  }
  const auto finite = [](double w) { return std::isfinite(w); };
  if (!std::all_of(weights_hidden_.begin(), weights_hidden_.end(), finite) ||
      !std::all_of(weights_output_.begin(), weights_output_.end(), finite)) {
    throw ConfigError("weights must be finite");
  }
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw ConfigError("sigmoid slope must be positive");
  }
  if (!std::isfinite(internal_threshold_)) {
    throw ConfigError("internal threshold must be finite");
  }
}

double init_magnitude(double learning_rate, std::size_t fan_in) {
  return std::sqrt(learning_rate / static_cast<double>(fan_in));
}

MlpModel init_weights(LayerSizes sizes, double learning_rate,
                      std::uint64_t seed, double lambda,
                      double internal_threshold) {
  if (sizes.inputs == 0 || sizes.hidden == 0 || sizes.outputs == 0) {
    throw ShapeError("layer sizes must be positive");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  const double hidden_mag = init_magnitude(learning_rate, sizes.inputs);
  const double output_mag = init_magnitude(learning_rate, sizes.hidden);
  for (const auto& [mag, fan_in] :
       {std::pair{hidden_mag, sizes.inputs}, std::pair{output_mag, sizes.hidden}}) {
    if (!(mag < 0.2)) {
      throw ConfigError("initial weight magnitude sqrt(" +
                        format_double(learning_rate) + "/" +
                        std::to_string(fan_in) + ") = " + format_double(mag) +
                        " is not below 0.2");
    }
  }
  Rng rng(seed);
  std::vector<double> hidden(sizes.hidden * (sizes.inputs + 1));
  std::vector<double> output(sizes.outputs * (sizes.hidden + 1));
  for (double& w : hidden) w = rng.coin() ? hidden_mag : -hidden_mag;
  for (double& w : output) w = rng.coin() ? output_mag : -output_mag;
  return MlpModel(sizes, std::move(hidden), std::move(output), lambda,
                  internal_threshold);
}

double sigmoid(double z, double lambda) {
  constexpr double kLow = std::numeric_limits<double>::min();
  constexpr double kHigh = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::clamp(1.0 / (1.0 + std::exp(-lambda * z)), kLow, kHigh);
}

Activations forward_pass(const MlpModel& model, std::span<const double> x) {
  const LayerSizes& sz = model.sizes();
  if (x.size() != sz.inputs) {
    throw ShapeError("input has " + std::to_string(x.size()) +
                     " values; model expects " + std::to_string(sz.inputs));
  }
  Activations a;
  a.hidden.resize(sz.hidden);
  a.output.resize(sz.outputs);
  for (std::size_t j = 0; j < sz.hidden; ++j) {
    const auto row = model.hidden_row(j);
    const double z = simd::dot(row.first(sz.inputs), x) + row[sz.inputs] -
                     model.internal_threshold();
    a.hidden[j] = sigmoid(z, model.lambda());
  }
  for (std::size_t l = 0; l < sz.outputs; ++l) {
    const auto row = model.output_row(l);
    const double z = simd::dot(row.first(sz.hidden), a.hidden) + row[sz.hidden];
    a.output[l] = sigmoid(z, model.lambda());
  }
  return a;
}

std::vector<double> forward(const MlpModel& model, std::span<const double> x) {
  return forward_pass(model, x).output;
}

double loss(std::span<const double> outputs, std::span<const double> targets) {
  if (outputs.size() != targets.size()) {
    throw ShapeError("loss: outputs and targets differ in length");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < outputs.size(); ++l) {
    const double e = outputs[l] - targets[l];
    sum += e * e;
  }
  return 0.5 * sum;
}

namespace {

struct Deltas {
  std::vector<double> hidden;
  std::vector<double> output;
};

// Error signals dLoss/dz for both layers.
Deltas backprop(const MlpModel& model, const Activations& a,
                std::span<const double> target) {
  const LayerSizes& sz = model.sizes();
  const double lambda = model.lambda();
  Deltas d;
  d.output.resize(sz.outputs);
  for (std::size_t l = 0; l < sz.outputs; ++l) {
    const double y = a.output[l];
    d.output[l] = (y - target[l]) * lambda * y * (1.0 - y);
  }
  d.hidden.assign(sz.hidden, 0.0);
  for (std::size_t l = 0; l < sz.outputs; ++l) {
    simd::axpy(d.output[l], model.output_row(l).first(sz.hidden), d.hidden);
  }
  for (std::size_t j = 0; j < sz.hidden; ++j) {
    const double h = a.hidden[j];
    d.hidden[j] *= lambda * h * (1.0 - h);
  }
  return d;
}

void check_example(const MlpModel& model, std::span<const double> x,
                   std::span<const double> target) {
  if (x.size() != model.sizes().inputs) {
    throw ShapeError("example input has " + std::to_string(x.size()) +
                     " values; model expects " +
                     std::to_string(model.sizes().inputs));
  }
  if (target.size() != model.sizes().outputs) {
    throw ShapeError("example target has " + std::to_string(target.size()) +
                     " values; model has " +
                     std::to_string(model.sizes().outputs) + " outputs");
  }
}

}  // namespace

Gradients gradient(const MlpModel& model, std::span<const double> x,
                   std::span<const double> target) {
  check_example(model, x, target);
  const LayerSizes& sz = model.sizes();
  const Activations a = forward_pass(model, x);
  const Deltas d = backprop(model, a, target);
  Gradients g;
  g.hidden.resize(model.weights_hidden().size());
  g.output.resize(model.weights_output().size());
  for (std::size_t j = 0; j < sz.hidden; ++j) {
    double* row = g.hidden.data() + j * (sz.inputs + 1);
    for (std::size_t i = 0; i < sz.inputs; ++i) row[i] = d.hidden[j] * x[i];
    row[sz.inputs] = d.hidden[j];
  }
  for (std::size_t l = 0; l < sz.outputs; ++l) {
    double* row = g.output.data() + l * (sz.hidden + 1);
    for (std::size_t j = 0; j < sz.hidden; ++j) row[j] = d.output[l] * a.hidden[j];
    row[sz.hidden] = d.output[l];
  }
  return g;
}

TrainResult train(MlpModel model, std::span<const TrainingExample> dataset,
                  const TrainConfig& config) {
  config.validate();
  if (dataset.empty()) throw Error("train: dataset is empty");
  for (const TrainingExample& ex : dataset) check_example(model, ex.input, ex.target);

  const LayerSizes sz = model.sizes();
  const double eta = config.learning_rate;
  const double mu = config.momentum;
  std::vector<double> velocity_hidden(model.weights_hidden().size(), 0.0);
  std::vector<double> velocity_output(model.weights_output().size(), 0.0);
  std::vector<double> input_aug(sz.inputs + 1, 1.0);
  std::vector<double> hidden_aug(sz.hidden + 1, 1.0);

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed);

  std::vector<double> history;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    for (const std::size_t idx : order) {
      const TrainingExample& ex = dataset[idx];
      const Activations a = forward_pass(model, ex.input);
      total += loss(a.output, ex.target);
      const Deltas d = backprop(model, a, ex.target);

      std::copy(a.hidden.begin(), a.hidden.end(), hidden_aug.begin());
      const std::size_t out_stride = sz.hidden + 1;
      for (std::size_t l = 0; l < sz.outputs; ++l) {
        simd::momentum_step(
            -eta * d.output[l], hidden_aug, mu,
            std::span(velocity_output).subspan(l * out_stride, out_stride),
            model.weights_output().subspan(l * out_stride, out_stride));
      }
      std::copy(ex.input.begin(), ex.input.end(), input_aug.begin());
      const std::size_t in_stride = sz.inputs + 1;
      for (std::size_t j = 0; j < sz.hidden; ++j) {
        simd::momentum_step(
            -eta * d.hidden[j], input_aug, mu,
            std::span(velocity_hidden).subspan(j * in_stride, in_stride),
            model.weights_hidden().subspan(j * in_stride, in_stride));
      }
    }
    const double mean = total / static_cast<double>(dataset.size());
    if (!std::isfinite(mean)) {
      throw TrainError("training diverged: non-finite loss in epoch " +
                           std::to_string(epoch),
                       epoch);
    }
    history.push_back(mean);
    if (mean <= config.target_error) break;
  }
  return {std::move(model), std::move(history)};
}

Prediction predict_from_outputs(std::span<const double> outputs) {
  if (outputs.empty()) throw ShapeError("predict: no outputs");
  std::size_t best = 0;
  double sum = 0.0;
  for (std::size_t l = 0; l < outputs.size(); ++l) {
    sum += outputs[l];
    if (outputs[l] > outputs[best]) best = l;
  }
  return {best, sum > 0.0 ? outputs[best] / sum : 0.0};
}

Prediction predict(const MlpModel& model, std::span<const double> x) {
  return predict_from_outputs(forward(model, x));
}

std::string save_model(const ClusterClassifier& c) {
  const MlpModel& m = c.model;
  json doc = {
      {"version", kModelFormatVersion},
      {"activation", "sigmoid"},
      {"lambda", m.lambda()},
      {"internal_threshold", m.internal_threshold()},
      {"layer_sizes", {m.sizes().inputs, m.sizes().hidden, m.sizes().outputs}},
      {"weights_hidden", m.weights_hidden()},
      {"weights_output", m.weights_output()},
      {"cluster_id", c.cluster_id},
      {"class_labels", c.class_labels},
  };
  return doc.dump() + "\n";
}

ClusterClassifier load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what(), 0, e.byte);
  }
  try {
    if (!doc.is_object()) throw ParseError("model file: not an object", 0, 0);
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ParseError("model file: unsupported version " +
                           std::to_string(version),
                       0, 0);
    }
    if (doc.at("activation").get<std::string>() != "sigmoid") {
      throw ParseError("model file: unknown activation", 0, 0);
    }
    const auto sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
    if (sizes.size() != 3) {
      throw ShapeError("model file: layer_sizes must have 3 entries");
    }
    ClusterClassifier c{
        doc.at("cluster_id").get<int>(),
        doc.at("class_labels").get<std::vector<std::string>>(),
        MlpModel({sizes[0], sizes[1], sizes[2]},
                 doc.at("weights_hidden").get<std::vector<double>>(),
                 doc.at("weights_output").get<std::vector<double>>(),
                 doc.at("lambda").get<double>(),
                 doc.value("internal_threshold", 0.0))};
    if (c.class_labels.size() != sizes[2]) {
      throw ShapeError("model file: " + std::to_string(c.class_labels.size()) +
                       " class labels for " + std::to_string(sizes[2]) +
                       " outputs");
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what(), 0, 0);
  }
}

}  // namespace inkrec
