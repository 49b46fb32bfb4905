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

#include "inkrec/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <thread>

#include "inkrec/error.hpp"
#include "inkrec/rng.hpp"

namespace inkrec {

ConfusionTally::ConfusionTally(std::vector<ConfusionCounts> per_class)
    : per_class_(std::move(per_class)) {
  if (per_class_.empty()) return;
  total_ = per_class_.front().total();
  for (const ConfusionCounts& c : per_class_) {
    if (c.total() != total_) {
      throw Error("confusion tally: classes disagree on the sample total");
    }
  }
}

ConfusionTally ConfusionTally::from_predictions(std::span<const int> gold,
                                                std::span<const int> predicted,
                                                std::size_t num_classes) {
  if (gold.size() != predicted.size()) {
    throw Error("confusion tally: gold and predicted lengths differ");
  }
  std::vector<ConfusionCounts> counts(num_classes);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int g = gold[i];
    const int p = predicted[i];
    if (g < 0 || static_cast<std::size_t>(g) >= num_classes ||
        p < -1 || p >= static_cast<int>(num_classes)) {
      throw Error("confusion tally: class index out of range");
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
      const bool is_gold = static_cast<std::size_t>(g) == c;
      const bool is_pred = p >= 0 && static_cast<std::size_t>(p) == c;
      if (is_gold && is_pred) {
        ++counts[c].tp;
      } else if (is_gold) {
        ++counts[c].fn;
      } else if (is_pred) {
        ++counts[c].fp;
      } else {
        ++counts[c].tn;
      }
    }
  }
  ConfusionTally tally(std::move(counts));
  tally.total_ = gold.size();
  return tally;
}

void ConfusionTally::merge(const ConfusionTally& other) {
  if (per_class_.empty()) {
    *this = other;
    return;
  }
  if (other.per_class_.size() != per_class_.size()) {
    throw Error("confusion tally: merging tallies over different classes");
  }
  for (std::size_t c = 0; c < per_class_.size(); ++c) {
    per_class_[c].tp += other.per_class_[c].tp;
    per_class_[c].fp += other.per_class_[c].fp;
    per_class_[c].fn += other.per_class_[c].fn;
    per_class_[c].tn += other.per_class_[c].tn;
  }
  total_ += other.total_;
}

Metrics metrics(const ConfusionTally& tally) {
  Metrics m;
  double accuracy_sum = 0.0, recall_sum = 0.0, precision_sum = 0.0;
  std::size_t accuracy_n = 0, recall_n = 0, precision_n = 0;
  const auto classes = tally.per_class();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const ConfusionCounts& k = classes[c];
    if (k.total() > 0) {
      accuracy_sum += static_cast<double>(k.tp + k.tn) / static_cast<double>(k.total());
      ++accuracy_n;
    }
    if (k.tp + k.fn > 0) {
      recall_sum += static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fn);
      ++recall_n;
    } else {
      m.undefined_recall.push_back(c);
    }
    if (k.tp + k.fp > 0) {
      precision_sum += static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fp);
      ++precision_n;
    } else {
      m.undefined_precision.push_back(c);
    }
  }
  if (accuracy_n > 0) m.accuracy = accuracy_sum / static_cast<double>(accuracy_n);
  if (recall_n > 0) m.recall = recall_sum / static_cast<double>(recall_n);
  if (precision_n > 0) m.precision = precision_sum / static_cast<double>(precision_n);
  m.fnr = 1.0 - m.recall;
  return m;
}

namespace {

// Sample indices per label, labels in sorted order.
std::vector<std::vector<std::size_t>> group_by_label(std::span<const std::string> labels) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [label, members] : groups) out.push_back(std::move(members));
  return out;
}

std::vector<std::string> labels_of(std::span<const PreparedSample> dataset) {
  std::vector<std::string> labels;
  labels.reserve(dataset.size());
  for (const PreparedSample& s : dataset) labels.push_back(s.label());
  return labels;
}

std::vector<std::string> class_inventory(std::span<const std::string> labels) {
  std::vector<std::string> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

int class_index(const std::vector<std::string>& classes, const std::string& label) {
  const auto it = std::lower_bound(classes.begin(), classes.end(), label);
  if (it == classes.end() || *it != label) return -1;
  return static_cast<int>(it - classes.begin());
}

struct RoundTally {
  ConfusionTally tally;
  RoundResult result;
};

RoundTally train_and_test(std::span<const PreparedSample> dataset,
                          const std::vector<std::string>& classes,
                          std::span<const std::size_t> train_idx,
                          std::span<const std::size_t> test_idx,
                          const PipelineConfig& config) {
  const Recognizer recognizer = Recognizer::train(dataset, config, train_idx);
  std::vector<int> gold, predicted;
  gold.reserve(test_idx.size());
  predicted.reserve(test_idx.size());
  std::size_t correct = 0;
  for (const std::size_t i : test_idx) {
    const Recognition r = recognizer.classify(dataset[i]);
    gold.push_back(class_index(classes, dataset[i].label()));
    predicted.push_back(r.label.empty() ? -1 : class_index(classes, r.label));
    if (r.label == dataset[i].label()) ++correct;
  }
  RoundTally out{ConfusionTally::from_predictions(gold, predicted, classes.size()), {}};
  out.result.metrics = metrics(out.tally);
  out.result.test_size = test_idx.size();
  out.result.correct = correct;
  out.result.top1_accuracy =
      test_idx.empty() ? 0.0
                       : static_cast<double>(correct) / static_cast<double>(test_idx.size());
  return out;
}

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

PipelineConfig with_seed(const PipelineConfig& config, std::uint64_t seed) {
  PipelineConfig c = config;
  c.train.seed = seed;
  return c;
}

}  // namespace

Split split_70_30(std::span<const std::string> labels, std::uint64_t seed) {
  if (labels.empty()) throw Error("split: dataset is empty");
  Split split;
  auto groups = group_by_label(labels);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    auto& members = groups[c];
    if (members.size() < 2) {
      throw Error("split: class '" + labels[members.front()] +
                  "' has fewer than 2 samples");
    }
    Rng rng(derive_seed(seed, c));
    rng.shuffle(std::span<std::size_t>(members));
    const auto n_train = static_cast<std::size_t>(
        std::llround(0.7 * static_cast<double>(members.size())));
    split.train.insert(split.train.end(), members.begin(), members.begin() + n_train);
    split.test.insert(split.test.end(), members.begin() + n_train, members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const std::string> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > labels.size()) {
    throw Error("k-fold: k must lie in [2, " + std::to_string(labels.size()) + "]");
  }
  std::vector<std::vector<std::size_t>> folds(k);
  auto groups = group_by_label(labels);
  std::size_t cursor = 0;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    auto& members = groups[c];
    if (members.size() < k) {
      throw Error("k-fold: class '" + labels[members.front()] + "' has " +
                  std::to_string(members.size()) + " samples, fewer than k = " +
                  std::to_string(k));
    }
    Rng rng(derive_seed(seed, c));
    rng.shuffle(std::span<std::size_t>(members));
    for (const std::size_t i : members) {
      folds[cursor].push_back(i);
      cursor = (cursor + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

EvalReport evaluate_split(std::span<const PreparedSample> dataset,
                          std::uint64_t seed, const PipelineConfig& config) {
  const auto labels = labels_of(dataset);
  const Split split = split_70_30(labels, seed);
  EvalReport report;
  report.protocol = Protocol::kSplit;
  report.rounds = 1;
  report.seed = seed;
  report.classes = class_inventory(labels);
  const RoundTally round = train_and_test(dataset, report.classes, split.train, split.test,
                                          with_seed(config, derive_seed(seed, 0x5117)));
  report.tally = round.tally;
  report.metrics = round.result.metrics;
  report.top1_accuracy = round.result.top1_accuracy;
  report.evaluated = split.test.size();
  report.per_round.push_back(round.result);
  return report;
}

EvalReport kfold(std::span<const PreparedSample> dataset, std::size_t k,
                 std::uint64_t seed, const PipelineConfig& config,
                 std::size_t threads) {
  const auto labels = labels_of(dataset);
  const auto folds = stratified_folds(labels, k, seed);
  EvalReport report;
  report.protocol = Protocol::kKFold;
  report.rounds = k;
  report.seed = seed;
  report.classes = class_inventory(labels);

  std::vector<RoundTally> rounds(k);
  parallel_for(k, threads, [&](std::size_t f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    rounds[f] = train_and_test(dataset, report.classes, train_idx, folds[f],
                               with_seed(config, derive_seed(seed, 0x10000 + f)));
  });

  std::size_t correct = 0;
  for (const RoundTally& r : rounds) {
    report.tally.merge(r.tally);
    report.per_round.push_back(r.result);
    report.evaluated += r.result.test_size;
    correct += r.result.correct;
  }
  report.metrics = metrics(report.tally);
  report.top1_accuracy =
      static_cast<double>(correct) / static_cast<double>(report.evaluated);
  return report;
}

MonteCarloReport monte_carlo(std::span<const PreparedSample> dataset,
                             std::size_t iterations, std::uint64_t seed,
                             const PipelineConfig& config, std::size_t threads) {
  if (iterations == 0) throw Error("monte carlo: iterations must be >= 1");
  MonteCarloReport report;
  report.iterations = iterations;
  report.seed = seed;
  report.per_iteration.resize(iterations);
  parallel_for(iterations, threads, [&](std::size_t i) {
    const EvalReport r = evaluate_split(dataset, derive_seed(seed, 0x20000 + i), config);
    report.per_iteration[i] = r.per_round.front();
  });

  const auto summarize = [&](auto field) {
    Range range{field(report.per_iteration.front()), 0.0,
                field(report.per_iteration.front())};
    double sum = 0.0;
    for (const RoundResult& r : report.per_iteration) {
      const double v = field(r);
      range.min = std::min(range.min, v);
      range.max = std::max(range.max, v);
      sum += v;
    }
    range.avg = std::clamp(sum / static_cast<double>(iterations), range.min, range.max);
    return range;
  };
  report.accuracy = summarize([](const RoundResult& r) { return r.metrics.accuracy; });
  report.top1_accuracy = summarize([](const RoundResult& r) { return r.top1_accuracy; });
  return report;
}

TokenStats token_stats(std::span<const std::string> labels,
                       std::span<const std::size_t> token_counts) {
  if (labels.size() != token_counts.size()) {
    throw Error("token stats: labels and counts differ in length");
  }
  TokenStats stats;
  std::size_t at_min = 0, at_mode = 0, at_max = 0;
  for (const auto& members : group_by_label(labels)) {
    std::map<std::size_t, std::size_t> histogram;
    for (const std::size_t i : members) ++histogram[token_counts[i]];
    ClassTokenStats c;
    c.label = labels[members.front()];
    c.samples = members.size();
    c.min = histogram.begin()->first;
    c.max = histogram.rbegin()->first;
    std::size_t best = 0;
    for (const auto& [count, freq] : histogram) {
      if (freq > best) {
        best = freq;
        c.mode = count;
      }
    }
    c.at_min = histogram[c.min];
    c.at_mode = histogram[c.mode];
    c.at_max = histogram[c.max];
    at_min += c.at_min;
    at_mode += c.at_mode;
    at_max += c.at_max;
    stats.classes.push_back(std::move(c));
  }
  if (!labels.empty()) {
    const auto n = static_cast<double>(labels.size());
    stats.fraction_at_min = static_cast<double>(at_min) / n;
    stats.fraction_at_mode = static_cast<double>(at_mode) / n;
    stats.fraction_at_max = static_cast<double>(at_max) / n;
  }
  return stats;
}

TokenStats token_stats(std::span<const PreparedSample> dataset) {
  std::vector<std::size_t> counts;
  counts.reserve(dataset.size());
  for (const PreparedSample& s : dataset) counts.push_back(s.segmentation.token_count());
  const auto labels = labels_of(dataset);
  return token_stats(labels, counts);
}

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::kSplit:
      return "split";
    case Protocol::kKFold:
      return "kfold";
    case Protocol::kMonteCarlo:
      return "montecarlo";
  }
  return "?";
}

json to_json(const Metrics& m) {
  return {{"accuracy", m.accuracy},
          {"recall", m.recall},
          {"precision", m.precision},
          {"fnr", m.fnr},
          {"undefined_recall_classes", m.undefined_recall},
          {"undefined_precision_classes", m.undefined_precision}};
}

namespace {

json round_to_json(const RoundResult& r) {
  json j = to_json(r.metrics);
  j["top1_accuracy"] = r.top1_accuracy;
  j["test_size"] = r.test_size;
  return j;
}

json range_to_json(const Range& r) {
  return {{"min", r.min}, {"avg", r.avg}, {"max", r.max}};
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%7.2f%%", 100.0 * v);
  return buf;
}

}  // namespace

json to_json(const EvalReport& r) {
  json rounds = json::array();
  for (const RoundResult& rr : r.per_round) rounds.push_back(round_to_json(rr));
  json tally = json::array();
  for (std::size_t c = 0; c < r.tally.per_class().size(); ++c) {
    const ConfusionCounts& k = r.tally.per_class()[c];
    tally.push_back({{"class", r.classes.at(c)},
                     {"tp", k.tp}, {"fp", k.fp}, {"fn", k.fn}, {"tn", k.tn}});
  }
  json j = to_json(r.metrics);
  j["protocol"] = to_string(r.protocol);
  j["rounds"] = r.rounds;
  j["seed"] = r.seed;
  j["top1_accuracy"] = r.top1_accuracy;
  j["evaluated"] = r.evaluated;
  j["per_round"] = std::move(rounds);
  j["tally"] = std::move(tally);
  return j;
}

json to_json(const MonteCarloReport& r) {
  json rounds = json::array();
  for (const RoundResult& rr : r.per_iteration) rounds.push_back(round_to_json(rr));
  return {{"protocol", "montecarlo"},
          {"iterations", r.iterations},
          {"seed", r.seed},
          {"accuracy", range_to_json(r.accuracy)},
          {"top1_accuracy", range_to_json(r.top1_accuracy)},
          {"per_iteration", std::move(rounds)}};
}

json to_json(const TokenStats& s) {
  json classes = json::array();
  for (const ClassTokenStats& c : s.classes) {
    classes.push_back({{"label", c.label}, {"samples", c.samples}, {"min", c.min},
                       {"mode", c.mode}, {"max", c.max}, {"at_min", c.at_min},
                       {"at_mode", c.at_mode}, {"at_max", c.at_max}});
  }
  return {{"classes", std::move(classes)},
          {"fraction_at_min", s.fraction_at_min},
          {"fraction_at_mode", s.fraction_at_mode},
          {"fraction_at_max", s.fraction_at_max}};
}

std::string to_text(const EvalReport& r) {
  std::string out;
  out += "protocol   " + std::string(to_string(r.protocol));
  if (r.protocol == Protocol::kKFold) out += " (k=" + std::to_string(r.rounds) + ")";
  out += "\nseed       " + std::to_string(r.seed);
  out += "\nevaluated  " + std::to_string(r.evaluated) + " samples, " +
         std::to_string(r.classes.size()) + " classes\n\n";
  out += "round     accuracy    recall  precision       fnr      top-1\n";
  for (std::size_t i = 0; i < r.per_round.size(); ++i) {
    const RoundResult& rr = r.per_round[i];
    char head[16];
    std::snprintf(head, sizeof head, "%-6zu", i + 1);
    out += std::string(head) + "  " + pct(rr.metrics.accuracy) + "  " +
           pct(rr.metrics.recall) + "   " + pct(rr.metrics.precision) + "  " +
           pct(rr.metrics.fnr) + "  " + pct(rr.top1_accuracy) + "\n";
  }
  out += "overall   " + pct(r.metrics.accuracy) + "  " + pct(r.metrics.recall) +
         "   " + pct(r.metrics.precision) + "  " + pct(r.metrics.fnr) + "  " +
         pct(r.top1_accuracy) + "\n";
  if (!r.metrics.undefined_recall.empty()) {
    out += "note: recall undefined for " +
           std::to_string(r.metrics.undefined_recall.size()) + " class(es)\n";
  }
  return out;
}

std::string to_text(const MonteCarloReport& r) {
  std::string out = "protocol   montecarlo (" + std::to_string(r.iterations) +
                    " iterations)\nseed       " + std::to_string(r.seed) + "\n\n";
  out += "metric              min       avg       max\n";
  out += "accuracy       " + pct(r.accuracy.min) + "  " + pct(r.accuracy.avg) + "  " +
         pct(r.accuracy.max) + "\n";
  out += "top-1          " + pct(r.top1_accuracy.min) + "  " + pct(r.top1_accuracy.avg) +
         "  " + pct(r.top1_accuracy.max) + "\n";
  return out;
}

std::string to_text(const TokenStats& s) {
  std::string out = "class    samples   min  mode   max\n";
  for (const ClassTokenStats& c : s.classes) {
    char line[128];
    std::snprintf(line, sizeof line, "%7zu  %4zu  %4zu  %4zu\n", c.samples, c.min,
                  c.mode, c.max);
    out += c.label + std::string(c.label.size() < 8 ? 8 - c.label.size() : 1, ' ') + line;
  }
  out += "samples at class minimum " + pct(s.fraction_at_min) + "\n";
  out += "samples at class mode    " + pct(s.fraction_at_mode) + "\n";
  out += "samples at class maximum " + pct(s.fraction_at_max) + "\n";
  return out;
}

}  // namespace inkrec
