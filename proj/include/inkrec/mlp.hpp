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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace inkrec {

struct LayerSizes {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::size_t outputs = 0;

  friend bool operator==(const LayerSizes&, const LayerSizes&) = default;
};

struct TrainConfig {
  double learning_rate = 0.1;
  double momentum = 0.05;
  // Subtracted from every hidden pre-activation.
  double internal_threshold = 0.0;
  std::size_t max_epochs = 200;
  // Training stops once the mean epoch loss is at or below this.
  double target_error = 1e-3;
  std::uint64_t seed = 42;

  // Throws ConfigError unless 0 < learning_rate < 1, 0 <= momentum < 1 and
  // max_epochs > 0.
  void validate() const;
};

// One-hidden-layer perceptron with logistic units 1 / (1 + exp(-lambda z)).
// Weight matrices are row-major with the bias in the last column:
// hidden is P x (Q + 1), output is C x (P + 1).
class MlpModel {
 public:
  // Throws ShapeError on size mismatch, ConfigError on non-finite values or a
  // non-positive lambda.
  MlpModel(LayerSizes sizes, std::vector<double> weights_hidden,
           std::vector<double> weights_output, double lambda = 1.0,
           double internal_threshold = 0.0);

  const LayerSizes& sizes() const { return sizes_; }
  double lambda() const { return lambda_; }
  double internal_threshold() const { return internal_threshold_; }

  std::span<const double> weights_hidden() const { return weights_hidden_; }
  std::span<const double> weights_output() const { return weights_output_; }
  std::span<double> weights_hidden() { return weights_hidden_; }
  std::span<double> weights_output() { return weights_output_; }

  std::span<const double> hidden_row(std::size_t j) const {
    return std::span<const double>(weights_hidden_)
        .subspan(j * (sizes_.inputs + 1), sizes_.inputs + 1);
  }
  std::span<const double> output_row(std::size_t l) const {
    return std::span<const double>(weights_output_)
        .subspan(l * (sizes_.hidden + 1), sizes_.hidden + 1);
  }

  friend bool operator==(const MlpModel&, const MlpModel&) = default;

 private:
  LayerSizes sizes_;
  std::vector<double> weights_hidden_;
  std::vector<double> weights_output_;
  double lambda_;
  double internal_threshold_;
};

// sqrt(eta / fan_in): the common magnitude of every initial weight.
double init_magnitude(double learning_rate, std::size_t fan_in);

// Every weight (bias included) is +/- init_magnitude(eta, fan-in of its layer)
// with the sign drawn from the seeded generator. Throws ConfigError when a
// magnitude reaches 0.2.
MlpModel init_weights(LayerSizes sizes, double learning_rate,
                      std::uint64_t seed, double lambda = 1.0,
                      double internal_threshold = 0.0);

double sigmoid(double z, double lambda);

struct Activations {
  std::vector<double> hidden;
  std::vector<double> output;
};

// Throws ShapeError when x.size() != inputs.
Activations forward_pass(const MlpModel& model, std::span<const double> x);
std::vector<double> forward(const MlpModel& model, std::span<const double> x);

// 0.5 * sum (output - target)^2
double loss(std::span<const double> outputs, std::span<const double> targets);

// dLoss/dW for one example, laid out like the weight matrices.
struct Gradients {
  std::vector<double> hidden;
  std::vector<double> output;
};

Gradients gradient(const MlpModel& model, std::span<const double> x,
                   std::span<const double> target);

struct TrainingExample {
  std::vector<double> input;
  std::vector<double> target;
};

struct TrainResult {
  MlpModel model;
  // Mean per-example loss of each epoch, measured before each update.
  std::vector<double> history;
};

// Per-example SGD with momentum; example order reshuffled each epoch from
// config.seed. Throws Error on an empty or mis-shaped dataset and TrainError
// when the loss stops being finite.
TrainResult train(MlpModel model, std::span<const TrainingExample> dataset,
                  const TrainConfig& config);

struct Prediction {
  std::size_t class_index = 0;
  double confidence = 0.0;
};

// argmax with the lowest index winning ties; confidence = max / sum.
Prediction predict_from_outputs(std::span<const double> outputs);
Prediction predict(const MlpModel& model, std::span<const double> x);

inline constexpr int kModelFormatVersion = 1;

// A trained network bound to the labels of its output units.
struct ClusterClassifier {
  int cluster_id = 1;
  std::vector<std::string> class_labels;
  MlpModel model;

  friend bool operator==(const ClusterClassifier&, const ClusterClassifier&) = default;
};

// Versioned JSON; weights row-major at full precision.
std::string save_model(const ClusterClassifier& classifier);
// Throws ParseError on malformed text and ShapeError when sizes disagree.
ClusterClassifier load_model(std::string_view text);

}  // namespace inkrec
