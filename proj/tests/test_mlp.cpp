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

#include <cfloat>
#include <cmath>

#include "doctest.h"
#include "inkrec/error.hpp"
#include "oracles.hpp"

using namespace inkrec;

namespace {

double sig(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1e-8, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("init magnitude and guard") {
  CHECK(init_magnitude(0.1, 100) == std::sqrt(0.001));
  CHECK(init_magnitude(0.1, 10) == doctest::Approx(0.1));
  CHECK_THROWS_AS(init_weights({10, 4, 2}, 0.5, 1), ConfigError);
  CHECK_THROWS_AS(init_weights({2, 4, 1}, 0.5, 1), ConfigError);

  const MlpModel m = init_weights({120, 16, 3}, 0.1, 9);
  for (double w : m.weights_hidden()) CHECK(std::abs(w) == std::sqrt(0.1 / 120));
  for (double w : m.weights_output()) CHECK(std::abs(w) == std::sqrt(0.1 / 16));
  CHECK(init_weights({120, 16, 3}, 0.1, 9) == m);
}

TEST_CASE("forward pass") {
  const MlpModel zero({3, 2, 2}, std::vector<double>(8, 0.0), std::vector<double>(6, 0.0));
  const std::vector<double> x = {1, -4, 9};
  for (double o : forward(zero, x)) CHECK(o == 0.5);

  const MlpModel tiny({2, 2, 1}, {0.1, -0.2, 0.05, 0.3, 0.4, -0.1}, {0.5, -0.6, 0.2});
  const std::vector<double> in = {1, 2};
  const double h1 = sig(0.1 - 0.4 + 0.05), h2 = sig(0.3 + 0.8 - 0.1);
  CHECK(std::abs(forward(tiny, in)[0] - sig(0.5 * h1 - 0.6 * h2 + 0.2)) < 1e-12);

  CHECK(sigmoid(50, 100) < 1.0);
  CHECK(sigmoid(50, 100) > 0.999);
  CHECK(sigmoid(-1e6, 1) > 0.0);
  CHECK_THROWS_AS(forward(tiny, std::vector<double>{1, 2, 3}), ShapeError);
}

TEST_CASE("loss") {
  const std::vector<double> a = {1, 0}, z = {0, 0}, o = {0.8, 0.3}, t = {1, 0};
  CHECK(loss(a, a) == 0);
  CHECK(loss(a, z) == 0.5);
  CHECK(loss(o, t) == doctest::Approx(0.065));
}

TEST_CASE("backprop agrees with finite differences") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const LayerSizes s{static_cast<std::size_t>(rng.between(1, 16)),
                       static_cast<std::size_t>(rng.between(1, 8)),
                       static_cast<std::size_t>(rng.between(1, 4))};
    std::vector<double> wh(s.hidden * (s.inputs + 1)), wo(s.outputs * (s.hidden + 1));
    for (double& w : wh) w = rng.uniform(-1, 1);
    for (double& w : wo) w = rng.uniform(-1, 1);
    const MlpModel m(s, wh, wo, rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5));
    std::vector<double> x(s.inputs), target(s.outputs);
    for (double& v : x) v = rng.uniform(-1, 1);
    for (double& v : target) v = rng.coin() ? 1.0 : 0.0;
    const Gradients g = gradient(m, x, target);
    const Gradients n = oracle::numeric_gradient(m, x, target, 1e-3);
    for (std::size_t i = 0; i < g.hidden.size(); ++i) CHECK(rel_err(g.hidden[i], n.hidden[i]) < 1e-6);
    for (std::size_t i = 0; i < g.output.size(); ++i) CHECK(rel_err(g.output[i], n.output[i]) < 1e-6);
  }
}

TEST_CASE("one plain step moves weights by -eta times the gradient") {
  const MlpModel m({2, 3, 2}, {0.1, -0.2, 0.05, 0.3, 0.4, -0.1, 0.2, 0.1, 0.0},
                   {0.5, -0.6, 0.2, 0.1, 0.3, -0.4, 0.2, 0.1});
  const std::vector<TrainingExample> data = {{{0.5, -1.0}, {1, 0}}};
  TrainConfig cfg;
  cfg.learning_rate = 0.3;
  cfg.momentum = 0;
  cfg.max_epochs = 1;
  cfg.target_error = 0;
  const TrainResult r = train(m, data, cfg);
  const Gradients n = oracle::numeric_gradient(m, data[0].input, data[0].target, 1e-3);
  for (std::size_t i = 0; i < n.hidden.size(); ++i) {
    CHECK(rel_err(r.model.weights_hidden()[i] - m.weights_hidden()[i], -0.3 * n.hidden[i]) < 1e-6);
  }
  for (std::size_t i = 0; i < n.output.size(); ++i) {
    CHECK(rel_err(r.model.weights_output()[i] - m.weights_output()[i], -0.3 * n.output[i]) < 1e-6);
  }
}

TEST_CASE("XOR converges") {
  // Explicit start: the magnitude guard rejects eta = 0.5 at fan-in 2.
  Rng rng(11);
  std::vector<double> wh(4 * 3), wo(1 * 5);
  for (double& w : wh) w = rng.uniform(-1, 1);
  for (double& w : wo) w = rng.uniform(-1, 1);
  const std::vector<TrainingExample> xor_set = {
      {{0, 0}, {0}}, {{0, 1}, {1}}, {{1, 0}, {1}}, {{1, 1}, {0}}};
  TrainConfig cfg;
  cfg.learning_rate = 0.5;
  cfg.momentum = 0.5;
  cfg.max_epochs = 20000;
  cfg.target_error = 0.001;
  const TrainResult r = train(MlpModel({2, 4, 1}, wh, wo), xor_set, cfg);
  CHECK(r.history.back() < 0.01);
  const TrainResult again = train(MlpModel({2, 4, 1}, wh, wo), xor_set, cfg);
  CHECK(again.history == r.history);
}

TEST_CASE("training errors") {
  const MlpModel m = init_weights({2, 2, 1}, 0.01, 1);
  CHECK_THROWS_AS(train(m, {}, {}), Error);
  const std::vector<TrainingExample> bad = {{{0, 0, 0}, {1}}};
  CHECK_THROWS_AS(train(m, bad, {}), Error);
}

TEST_CASE("prediction") {
  const std::vector<double> a = {0.9, 0.1}, b = {0.4, 0.4}, c = {0.2, 0.3, 0.5};
  CHECK(predict_from_outputs(a).class_index == 0);
  CHECK(predict_from_outputs(a).confidence == doctest::Approx(0.9));
  CHECK(predict_from_outputs(b).class_index == 0);
  CHECK(predict_from_outputs(c).class_index == 2);
  CHECK(predict_from_outputs(c).confidence == doctest::Approx(0.5));
}

TEST_CASE("model files") {
  const ClusterClassifier c{3, {"ز", "ف", "ک"}, init_weights({30, 5, 3}, 0.1, 4, 1.5, 0.25)};
  const std::string text = save_model(c);
  CHECK(load_model(text) == c);
  CHECK_THROWS_AS(load_model(text.substr(0, text.size() / 2)), ParseError);

  auto doc = json::parse(R"({"version":1,"activation":"sigmoid","lambda":1.0,
      "layer_sizes":[2,2,1],"weights_hidden":[0,0,0,0,0,0],
      "weights_output":[0,0,0,0,0,0,0,0,0],"cluster_id":1,"class_labels":["a"]})");
  CHECK_THROWS_AS(load_model(doc.dump()), ShapeError);
  doc["weights_output"] = {0, 0, 0};
  CHECK_NOTHROW(load_model(doc.dump()));
  doc["version"] = 2;
  CHECK_THROWS_AS(load_model(doc.dump()), ParseError);
}
