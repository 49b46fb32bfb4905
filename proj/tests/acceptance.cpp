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

// Acceptance run: one PASS/FAIL line per headline criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "inkrec/error.hpp"
#include "inkrec/eval.hpp"
#include "inkrec/features.hpp"
#include "inkrec/ink_format.hpp"
#include "inkrec/preprocess.hpp"
#include "inkrec/recognizer.hpp"
#include "inkrec/synthgen.hpp"
#include "oracles.hpp"

using namespace inkrec;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;
int ran = 0;
// Empty runs every criterion; otherwise only the named one.
std::string only;

void criterion(const char* name, const std::function<Outcome()>& body) {
  if (!only.empty() && only != name) return;
  ++ran;
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  %-28s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::vector<Stroke> random_corpus() {
  Rng rng(2024);
  std::vector<Stroke> out;
  for (int i = 0; i < 1000; ++i) {
    out.push_back(oracle::random_stroke(rng, static_cast<std::size_t>(rng.between(2, 300))));
  }
  return out;
}

bool fnr_identity(const Metrics& m) { return m.fnr == 1.0 - m.recall; }

// The desk-scale synthetic set shared by the Table 3/4 analogues.
const std::vector<PreparedSample>& table_set(const PipelineConfig& cfg) {
  static const std::vector<PreparedSample> set =
      prepare_all(generate(default_templates(), 50, 0.02, 42), cfg);
  return set;
}

// Counts metric blocks in an emitted report (struct and JSON) that break
// fnr == 1 - recall.
std::size_t fnr_violations(const EvalReport& r, std::size_t& checked) {
  std::size_t bad = !fnr_identity(r.metrics);
  checked += 1 + r.per_round.size();
  for (const RoundResult& round : r.per_round) bad += !fnr_identity(round.metrics);
  const json doc = to_json(r);
  bad += doc["fnr"].get<double>() != 1.0 - doc["recall"].get<double>();
  for (const json& round : doc["per_round"]) {
    bad += round["fnr"].get<double>() != 1.0 - round["recall"].get<double>();
  }
  return bad;
}

std::size_t fnr_violations(const MonteCarloReport& r, std::size_t& checked) {
  std::size_t bad = 0;
  checked += r.per_iteration.size();
  for (const RoundResult& round : r.per_iteration) bad += !fnr_identity(round.metrics);
  for (const json& round : to_json(r)["per_iteration"]) {
    bad += round["fnr"].get<double>() != 1.0 - round["recall"].get<double>();
  }
  return bad;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) only = argv[1];
  const std::vector<Stroke> corpus = random_corpus();

  criterion("segmentation-oracle", [&] {
    const auto start = Clock::now();
    std::size_t points = 0, mismatches = 0;
    Rng rng(77);
    for (const Stroke& s : corpus) {
      const double f = rng.uniform(0.01, 0.2);
      const DirectionLength dl = direction_length(s);
      const auto got = detect_critical_points(s, dl, f).points;
      const auto want =
          oracle::critical_points(oracle::test_axis(s, dl.value), window_half_width(s.size(), f));
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < want.size(); ++i) {
        same = got[i].point_index == want[i].index && got[i].kind == want[i].kind;
      }
      mismatches += !same;
      points += want.size();
    }
    const double secs = seconds_since(start);
    return Outcome{mismatches == 0 && secs < 10.0,
                   fmt("1000 strokes, %.0f critical points, %.0f mismatches, %.3fs (< 10s)",
                       static_cast<double>(points), static_cast<double>(mismatches), secs)};
  });

  criterion("tokenization-cover", [&] {
    std::size_t bad = 0, tokens = 0;
    for (const Stroke& s : corpus) {
      const auto cps = detect_critical_points(s, direction_length(s)).points;
      const auto t = tokenize(s, cps);
      std::vector<int> covered(s.size(), 0);
      for (const Token& tok : t) {
        for (std::size_t i = tok.start; i <= tok.end && i < s.size(); ++i) ++covered[i];
      }
      bool ok = !t.empty();
      for (int c : covered) ok = ok && c == 1;
      bad += !ok;
      tokens += t.size();
    }
    return Outcome{bad == 0, fmt("1000 strokes, %.0f tokens, %.0f not tiled exactly",
                                 static_cast<double>(tokens), static_cast<double>(bad))};
  });

  criterion("smoothing-properties", [&] {
    auto ys = [](std::vector<double> y) {
      std::vector<InkPoint> p;
      for (std::size_t i = 0; i < y.size(); ++i) p.push_back({static_cast<double>(i), y[i]});
      return Stroke(std::move(p));
    };
    double worst = 0.0;
    auto track = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };
    const Stroke a = smooth_stroke(ys({0, 10, 20}));
    track(a[0].y, 0), track(a[1].y, 6), track(a[2].y, 20);
    const Stroke b = smooth_stroke(ys({0, 10, 20, 30}));
    track(b[0].y, 0), track(b[1].y, 6), track(b[2].y, 13.6), track(b[3].y, 30);
    for (int passes = 1; passes <= 3; ++passes) {
      const Stroke flat = smooth_stroke(Stroke({{4, 7}, {4, 7}, {4, 7}, {4, 7}, {4, 7}}), {passes});
      for (const InkPoint& p : flat.points()) {
        track(p.x, 4), track(p.y, 7);
      }
    }
    std::size_t violations = 0;
    for (const Stroke& s : corpus) {
      const Stroke out = smooth_stroke(s);
      const BoundingBox box = s.bounds();
      violations += !(out[0] == s[0]) + !(out[s.size() - 1] == s[s.size() - 1]);
      for (const InkPoint& p : out.points()) {
        violations += p.x < box.min_x - 1e-12 || p.x > box.max_x + 1e-12 ||
                      p.y < box.min_y - 1e-12 || p.y > box.max_y + 1e-12;
      }
    }
    return Outcome{worst <= 1e-12 && violations == 0,
                   fmt("hand sequences max error %.2e (<= 1e-12); %.0f pin/box violations "
                       "over 1000 strokes",
                       worst, static_cast<double>(violations))};
  });

  criterion("gradient-check", [&] {
    const auto start = Clock::now();
    Rng rng(4242);
    double worst = 0.0;
    std::size_t weights = 0;
    for (int net = 0; net < 100; ++net) {
      const LayerSizes s{static_cast<std::size_t>(rng.between(1, 16)),
                         static_cast<std::size_t>(rng.between(1, 8)),
                         static_cast<std::size_t>(rng.between(1, 4))};
      std::vector<double> wh(s.hidden * (s.inputs + 1)), wo(s.outputs * (s.hidden + 1));
      for (double& w : wh) w = rng.uniform(-1, 1);
      for (double& w : wo) w = rng.uniform(-1, 1);
      const MlpModel m(s, wh, wo, rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5));
      std::vector<double> x(s.inputs), t(s.outputs);
      for (double& v : x) v = rng.uniform(-1, 1);
      for (double& v : t) v = rng.coin() ? 1.0 : 0.0;
      const Gradients g = gradient(m, x, t);
      const Gradients n = oracle::numeric_gradient(m, x, t, 1e-3);
      auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({1e-8, std::abs(a), std::abs(b)});
      };
      for (std::size_t i = 0; i < g.hidden.size(); ++i) worst = std::max(worst, rel(g.hidden[i], n.hidden[i]));
      for (std::size_t i = 0; i < g.output.size(); ++i) worst = std::max(worst, rel(g.output[i], n.output[i]));
      weights += g.hidden.size() + g.output.size();
    }
    const double secs = seconds_since(start);
    return Outcome{worst <= 1e-6 && secs < 30.0,
                   fmt("100 networks, %.0f weights, worst relative error %.2e (<= 1e-6), %.2fs",
                       static_cast<double>(weights), worst, secs)};
  });

  criterion("metric-oracle", [&] {
    Rng rng(9);
    std::size_t mismatches = 0, identity_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto c = static_cast<std::size_t>(rng.between(1, 12));
      std::vector<int> gold(static_cast<std::size_t>(rng.between(1, 200))), pred(gold.size());
      for (std::size_t i = 0; i < gold.size(); ++i) {
        gold[i] = static_cast<int>(rng.below(c));
        pred[i] = static_cast<int>(rng.below(c + 1)) - 1;
      }
      const ConfusionTally tally = ConfusionTally::from_predictions(gold, pred, c);
      const auto want = oracle::recount(gold, pred, c);
      mismatches += !std::equal(want.begin(), want.end(), tally.per_class().begin());
      // Macro averages recomputed from the recount.
      double acc = 0, rec = 0, prec = 0;
      std::size_t nr = 0, np = 0;
      for (const ConfusionCounts& k : want) {
        acc += static_cast<double>(k.tp + k.tn) / static_cast<double>(k.total());
        if (k.tp + k.fn > 0) rec += static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fn), ++nr;
        if (k.tp + k.fp > 0) prec += static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fp), ++np;
      }
      const Metrics m = metrics(tally);
      const double er = nr ? rec / static_cast<double>(nr) : 0.0;
      const double ep = np ? prec / static_cast<double>(np) : 0.0;
      mismatches += m.accuracy != acc / static_cast<double>(c) || m.recall != er || m.precision != ep;
      identity_failures += !fnr_identity(m);
    }
    // Every report the evaluators emit.
    PipelineConfig small;
    small.hidden = 16;
    const auto set = prepare_all(generate(default_templates(), 10, 0.05, 5), small);
    std::size_t checked = 0;
    identity_failures += fnr_violations(evaluate_split(set, 1, small), checked);
    identity_failures += fnr_violations(kfold(set, 5, 1, small), checked);
    identity_failures += fnr_violations(monte_carlo(set, 5, 1, small), checked);
    return Outcome{mismatches == 0 && identity_failures == 0,
                   fmt("1000 label vectors, %.0f mismatches; %.0f report metric blocks, "
                       "%.0f with fnr != 1 - recall",
                       static_cast<double>(mismatches), static_cast<double>(checked),
                       static_cast<double>(identity_failures))};
  });

  PipelineConfig cfg;
  criterion("kfold-accuracy", [&] {
    const auto start = Clock::now();
    const auto& set = table_set(cfg);
    const EvalReport k5 = kfold(set, 5, 42, cfg, 1);
    const EvalReport k10 = kfold(set, 10, 42, cfg, 1);
    std::size_t checked = 0;
    const std::size_t bad_fnr = fnr_violations(k5, checked) + fnr_violations(k10, checked);
    const double secs = seconds_since(start);
    // Both the one-vs-rest macro accuracy and the stricter top-1 rate must pass.
    const bool ok = k5.metrics.accuracy >= 0.90 && k5.top1_accuracy >= 0.90 &&
                    k10.metrics.accuracy >= k5.metrics.accuracy - 0.02 &&
                    k10.top1_accuracy >= k5.top1_accuracy - 0.02 && bad_fnr == 0 && secs < 300.0;
    return Outcome{ok, fmt("k=5 top-1 %.4f macro %.4f; k=10 top-1 %.4f macro ", k5.top1_accuracy,
                           k5.metrics.accuracy, k10.top1_accuracy) +
                           fmt("%.4f; 12 classes x 50, single thread, %.1fs (< 300s)",
                               k10.metrics.accuracy, secs)};
  });

  criterion("montecarlo-spread", [&] {
    const auto start = Clock::now();
    const MonteCarloReport r = monte_carlo(table_set(cfg), 100, 42, cfg, 1);
    std::size_t checked = 0;
    const std::size_t bad_fnr = fnr_violations(r, checked);
    const double secs = seconds_since(start);
    auto ordered = [](const Range& x) { return x.min <= x.avg && x.avg <= x.max; };
    const double spread_top1 = r.top1_accuracy.max - r.top1_accuracy.min;
    const double spread_macro = r.accuracy.max - r.accuracy.min;
    const bool ok = r.iterations == 100 && ordered(r.accuracy) && ordered(r.top1_accuracy) &&
                    spread_top1 <= 0.05 && spread_macro <= 0.05 && bad_fnr == 0 && secs < 1800.0;
    return Outcome{ok, fmt("100 iterations, top-1 min/avg/max %.4f/%.4f/%.4f spread %.4f; ",
                           r.top1_accuracy.min, r.top1_accuracy.avg, r.top1_accuracy.max,
                           spread_top1) +
                           fmt("macro spread %.4f (<= 0.05), %.1fs", spread_macro, secs)};
  });

  criterion("token-mode-stability", [&] {
    std::vector<TokenStats> runs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      runs.push_back(token_stats(prepare_all(generate(default_templates(), 50, 0.02, seed), cfg)));
    }
    std::size_t unstable = 0;
    std::string modes;
    for (std::size_t c = 0; c < runs[0].classes.size(); ++c) {
      bool same = true;
      for (const TokenStats& s : runs) same = same && s.classes[c].mode == runs[0].classes[c].mode;
      unstable += !same;
      modes += runs[0].classes[c].label + "=" + std::to_string(runs[0].classes[c].mode) + " ";
    }
    double lowest_at_mode = 1.0;
    for (const TokenStats& s : runs) lowest_at_mode = std::min(lowest_at_mode, s.fraction_at_mode);
    return Outcome{unstable == 0,
                   fmt("5 seeds, %.0f classes with differing modes, >= %.1f%% of samples at "
                       "mode; modes: ",
                       static_cast<double>(unstable), 100 * lowest_at_mode) + modes};
  });

  criterion("determinism", [&] {
    auto run_all = [&] {
      std::string out;
      const auto ink = generate(default_templates(), 10, 0.02, 7);
      out += write_ink_file(ink);
      std::vector<InkSample> smoothed;
      for (const InkSample& s : ink) smoothed.push_back(smooth_sample(s, cfg.preprocess));
      out += write_ink_file(smoothed);
      std::string csv = feature_csv_header();
      for (std::size_t i = 0; i < smoothed.size(); ++i) {
        const SampleSegmentation seg = segment_sample(smoothed[i], cfg.window_fraction);
        out += segmentation_to_json(seg).dump();
        append_feature_csv(csv, i, extract_features(smoothed[i], seg));
      }
      out += csv;
      const auto prepared = prepare_all(ink, cfg);
      const Recognizer r = Recognizer::train(prepared, cfg);
      for (const ClusterClassifier& c : r.classifiers()) out += save_model(c);
      out += r.manifest().dump();
      out += to_json(kfold(prepared, 2, 3, cfg, 1)).dump();
      out += to_json(monte_carlo(prepared, 3, 3, cfg, 1)).dump();
      out += to_json(token_stats(prepared)).dump();
      return out;
    };
    const std::string a = run_all(), b = run_all();
    const auto prepared = prepare_all(generate(default_templates(), 10, 0.02, 7), cfg);
    const std::string serial = to_json(kfold(prepared, 5, 3, cfg, 1)).dump();
    const std::string threaded = to_json(kfold(prepared, 5, 3, cfg, 4)).dump();
    return Outcome{a == b && serial == threaded,
                   fmt("two runs of gen/preprocess/segment/featurize/train/eval (%.0f bytes) ",
                       static_cast<double>(a.size())) +
                       (a == b ? "identical" : "DIFFER") + "; k-fold with 1 vs 4 threads " +
                       (serial == threaded ? "identical" : "DIFFER")};
  });

  criterion("init-magnitude", [&] {
    std::size_t wrong = 0, checked = 0;
    for (const LayerSizes s : {LayerSizes{120, 64, 3}, LayerSizes{120, 16, 4}, LayerSizes{30, 8, 2}}) {
      for (const double eta : {0.01, 0.1, 0.5}) {
        const double hm = std::sqrt(eta / static_cast<double>(s.inputs));
        const double om = std::sqrt(eta / static_cast<double>(s.hidden));
        if (hm >= 0.2 || om >= 0.2) continue;
        const MlpModel m = init_weights(s, eta, 11);
        for (double w : m.weights_hidden()) wrong += std::abs(w) != hm, ++checked;
        for (double w : m.weights_output()) wrong += std::abs(w) != om, ++checked;
      }
    }
    std::size_t guard_trips = 0, guard_cases = 0;
    for (const auto& [n, eta] : std::vector<std::pair<std::size_t, double>>{
             {10, 0.5}, {4, 0.25}, {2, 0.1}, {1, 0.04}, {8, 0.9}}) {
      ++guard_cases;
      try {
        init_weights({n, 32, 2}, eta, 1);
      } catch (const ConfigError&) {
        ++guard_trips;
      }
    }
    // Just under the bound must be accepted.
    bool accepts_below = true;
    try {
      init_weights({100, 100, 2}, 3.99, 1);
    } catch (const ConfigError&) {
      accepts_below = false;
    }
    return Outcome{wrong == 0 && checked > 0 && guard_trips == guard_cases && accepts_below,
                   fmt("%.0f weights, %.0f off sqrt(eta/fan-in); guard tripped %.0f/%.0f",
                       static_cast<double>(checked), static_cast<double>(wrong),
                       static_cast<double>(guard_trips), static_cast<double>(guard_cases))};
  });

  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures ? 1 : 0;
}
