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
#include <vector>

#include "inkrec/ink_json.hpp"
#include "inkrec/recognizer.hpp"

namespace inkrec {

// One-vs-rest counts for one class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

class ConfusionTally {
 public:
  ConfusionTally() = default;
  // Throws Error unless every class sums to the same total.
  explicit ConfusionTally(std::vector<ConfusionCounts> per_class);

  // `predicted` entries of -1 mean "no prediction" (a miss for the gold class).
  static ConfusionTally from_predictions(std::span<const int> gold,
                                         std::span<const int> predicted,
                                         std::size_t num_classes);

  // Adds counts class by class; both tallies must cover the same classes.
  void merge(const ConfusionTally& other);

  std::span<const ConfusionCounts> per_class() const { return per_class_; }
  std::size_t total() const { return total_; }

 private:
  std::vector<ConfusionCounts> per_class_;
  std::size_t total_ = 0;
};

struct Metrics {
  double accuracy = 0.0;   // (TP+TN)/(TP+TN+FP+FN)
  double recall = 0.0;     // TP/(TP+FN)
  double precision = 0.0;  // TP/(TP+FP)
  double fnr = 0.0;        // 1 - recall
  // Classes left out of the macro average because the ratio is 0/0.
  std::vector<std::size_t> undefined_recall;
  std::vector<std::size_t> undefined_precision;
};

// Per-class ratios, macro-averaged over classes where they are defined.
Metrics metrics(const ConfusionTally& tally);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified: round(0.7 n) of each class goes to train. Throws Error for a
// class with fewer than 2 samples.
Split split_70_30(std::span<const std::string> labels, std::uint64_t seed);

// Stratified folds; every class is dealt round-robin so each fold holds
// floor or ceil of its share. Throws Error unless 2 <= k <= n and every class
// has at least k samples.
std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const std::string> labels, std::size_t k, std::uint64_t seed);

enum class Protocol { kSplit, kKFold, kMonteCarlo };

struct RoundResult {
  Metrics metrics;
  // Fraction of test samples whose predicted label is the gold one.
  double top1_accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t test_size = 0;
};

struct EvalReport {
  Protocol protocol = Protocol::kSplit;
  // k for k-fold, 1 for the single split.
  std::size_t rounds = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> classes;
  ConfusionTally tally;
  Metrics metrics;
  double top1_accuracy = 0.0;
  std::size_t evaluated = 0;
  std::vector<RoundResult> per_round;
};

struct Range {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
};

struct MonteCarloReport {
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  Range accuracy;
  Range top1_accuracy;
  std::vector<RoundResult> per_iteration;
};

EvalReport evaluate_split(std::span<const PreparedSample> dataset,
                          std::uint64_t seed, const PipelineConfig& config);

// Each fold trains a fresh recognizer (seeded from `seed` and the fold index)
// on the other k-1 folds; the fold tallies are summed before computing the
// aggregate metrics. Folds run on up to `threads` workers; results do not
// depend on the thread count.
EvalReport kfold(std::span<const PreparedSample> dataset, std::size_t k,
                 std::uint64_t seed, const PipelineConfig& config,
                 std::size_t threads = 1);

// `iterations` independent 70/30 split-train-test rounds.
MonteCarloReport monte_carlo(std::span<const PreparedSample> dataset,
                             std::size_t iterations, std::uint64_t seed,
                             const PipelineConfig& config,
                             std::size_t threads = 1);

struct ClassTokenStats {
  std::string label;
  std::size_t samples = 0;
  std::size_t min = 0;
  std::size_t mode = 0;  // smallest on ties
  std::size_t max = 0;
  std::size_t at_min = 0;
  std::size_t at_mode = 0;
  std::size_t at_max = 0;
};

struct TokenStats {
  std::vector<ClassTokenStats> classes;  // sorted by label
  // Fraction of all samples whose token count equals their class's
  // minimum / mode / maximum.
  double fraction_at_min = 0.0;
  double fraction_at_mode = 0.0;
  double fraction_at_max = 0.0;
};

TokenStats token_stats(std::span<const std::string> labels,
                       std::span<const std::size_t> token_counts);
TokenStats token_stats(std::span<const PreparedSample> dataset);

std::string_view to_string(Protocol p);
json to_json(const Metrics& m);
json to_json(const EvalReport& report);
json to_json(const MonteCarloReport& report);
json to_json(const TokenStats& stats);
std::string to_text(const EvalReport& report);
std::string to_text(const MonteCarloReport& report);
std::string to_text(const TokenStats& stats);

}  // namespace inkrec
