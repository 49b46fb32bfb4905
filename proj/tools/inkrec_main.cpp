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

// inkrec: command-line front end for the handwriting pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "inkrec/error.hpp"
#include "inkrec/eval.hpp"
#include "inkrec/features.hpp"
#include "inkrec/ink_format.hpp"
#include "inkrec/preprocess.hpp"
#include "inkrec/recognizer.hpp"
#include "inkrec/segmentation.hpp"
#include "inkrec/service.hpp"
#include "inkrec/simd.hpp"
#include "inkrec/synthgen.hpp"

namespace fs = std::filesystem;
using namespace inkrec;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::vector<InkSample> load_samples(const std::string& path) {
  ParsedInk parsed = read_ink_file(path);
  if (parsed.duplicates_dropped > 0) {
    std::cerr << "warning: dropped " << parsed.duplicates_dropped
              << " consecutive duplicate point(s) from " << path << "\n";
  }
  return std::move(parsed.samples);
}

void add_window_option(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--window-fraction", cfg.window_fraction,
                  "Critical-point flank width as a fraction of stroke points; "
                  "m = max(1, floor(f * N))")
      ->capture_default_str();
}

void add_pipeline_options(CLI::App* cmd, PipelineConfig& cfg) {
  add_window_option(cmd, cfg);
  cmd->add_option("--passes", cfg.preprocess.passes, "Smoothing sweeps per stroke")
      ->capture_default_str();
  cmd->add_option("--max-tokens", cfg.max_tokens,
                  "Token slots in the encoded input (15 bits each)")
      ->capture_default_str();
  cmd->add_option("--hidden", cfg.hidden, "Hidden units per cluster network")
      ->capture_default_str();
  cmd->add_option("--lambda", cfg.lambda, "Sigmoid slope")->capture_default_str();
  cmd->add_option("--learning-rate", cfg.train.learning_rate,
                  "Learning rate; also sets the initial weight magnitude sqrt(rate/fan-in)")
      ->capture_default_str();
  cmd->add_option("--momentum", cfg.train.momentum, "Momentum coefficient")
      ->capture_default_str();
  cmd->add_option("--threshold", cfg.train.internal_threshold,
                  "Internal threshold subtracted from hidden pre-activations")
      ->capture_default_str();
  cmd->add_option("--epochs", cfg.train.max_epochs, "Maximum training epochs")
      ->capture_default_str();
  cmd->add_option("--target-error", cfg.train.target_error,
                  "Stop once the mean epoch loss reaches this value")
      ->capture_default_str();
}

std::string segment_document(const std::vector<InkSample>& samples,
                             double window_fraction) {
  std::string out = "{\"version\":1,\"window_fraction\":" +
                    json(window_fraction).dump() + ",\"samples\":[";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SampleSegmentation seg = segment_sample(samples[i], window_fraction);
    json entry = sample_to_json(samples[i]);
    entry["sample_id"] = i;
    entry["token_count"] = seg.token_count();
    entry["segmentation"] = segmentation_to_json(seg);
    out += i == 0 ? "\n" : ",\n";
    out += entry.dump();
  }
  out += samples.empty() ? "]}\n" : "\n]}\n";
  return out;
}

// Features from a `segment` dump (tokens taken from the file) or from plain
// ink (segmented here).
std::string featurize_file(const std::string& path, double window_fraction) {
  const std::string text = read_text_file(path);
  const ParsedInk parsed = parse_ink_file(text);
  const json doc = json::parse(text);
  std::string csv = feature_csv_header();
  for (std::size_t i = 0; i < parsed.samples.size(); ++i) {
    const InkSample& sample = parsed.samples[i];
    const json& entry = doc["samples"][i];
    const SampleSegmentation seg =
        entry.contains("segmentation")
            ? segmentation_from_json(entry["segmentation"], sample)
            : segment_sample(sample, window_fraction);
    append_feature_csv(csv, i, extract_features(sample, seg));
  }
  return csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online handwriting recognition: smoothing, critical-point "
               "segmentation, token features and per-cluster MLP classifiers."};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Force a kernel variant: scalar, avx2 or neon");

  PipelineConfig cfg;
  std::string in, out, models;
  std::uint64_t seed = 42;
  std::size_t threads = 1;

  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic labeled ink set");
  std::size_t classes = 12, per_class = 50;
  double noise = 0.02;
  gen->add_option("--classes", classes, "Number of built-in templates to use (1-12)")
      ->capture_default_str();
  gen->add_option("--per-class", per_class, "Samples per class")->capture_default_str();
  gen->add_option("--noise", noise, "Jitter std as a fraction of the template diagonal")
      ->capture_default_str();
  gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", out, "Output ink file (default: stdout)");

  auto* pre = app.add_subcommand("preprocess", "Smooth every stroke of an ink file");
  pre->add_option("--in", in, "Input ink file")->required();
  pre->add_option("--out", out, "Output ink file (default: stdout)");
  pre->add_option("--passes", cfg.preprocess.passes, "Smoothing sweeps per stroke")
      ->capture_default_str();

  auto* seg = app.add_subcommand("segment", "Critical points and tokens per sample (JSON)");
  seg->add_option("--in", in, "Input ink file")->required();
  seg->add_option("--out", out, "Output JSON (default: stdout)");
  add_window_option(seg, cfg);

  auto* feat = app.add_subcommand("featurize", "Per-token feature CSV");
  feat->add_option("--in", in, "Segment dump or ink file")->required();
  feat->add_option("--out", out, "Output CSV (default: stdout)");
  add_window_option(feat, cfg);

  auto* train = app.add_subcommand("train", "Train the per-cluster classifiers");
  train->add_option("--in", in, "Labeled ink file")->required();
  train->add_option("--models", models, "Output model directory")->required();
  train->add_option("--seed", seed, "Training seed")->capture_default_str();
  add_pipeline_options(train, cfg);

  auto* eval = app.add_subcommand("eval", "Evaluate with a split, k-fold or Monte Carlo protocol");
  std::string protocol = "kfold", json_out;
  std::size_t k = 10, iterations = 100;
  eval->add_option("--in", in, "Labeled ink file")->required();
  eval->add_option("--protocol", protocol, "split, kfold or montecarlo")
      ->check(CLI::IsMember({"split", "kfold", "montecarlo"}))
      ->capture_default_str();
  eval->add_option("--k", k, "Folds for kfold")->capture_default_str();
  eval->add_option("--iterations", iterations, "Rounds for montecarlo")->capture_default_str();
  eval->add_option("--seed", seed, "Split and training seed")->capture_default_str();
  eval->add_option("--threads", threads, "Worker threads for folds/rounds")->capture_default_str();
  eval->add_option("--json", json_out, "Also write the report as JSON");
  add_pipeline_options(eval, cfg);

  auto* mc = app.add_subcommand("montecarlo", "Repeated 70/30 split-train-test rounds");
  mc->add_option("--in", in, "Labeled ink file")->required();
  mc->add_option("--iterations", iterations, "Rounds")->capture_default_str();
  mc->add_option("--seed", seed, "Seed")->capture_default_str();
  mc->add_option("--threads", threads, "Worker threads")->capture_default_str();
  mc->add_option("--json", json_out, "Also write the report as JSON");
  add_pipeline_options(mc, cfg);

  auto* stats = app.add_subcommand("token-stats", "Per-class min/mode/max token counts");
  stats->add_option("--in", in, "Labeled ink file")->required();
  stats->add_option("--json", json_out, "Also write the statistics as JSON");
  stats->add_option("--passes", cfg.preprocess.passes, "Smoothing sweeps per stroke")
      ->capture_default_str();
  add_window_option(stats, cfg);

  auto* rec = app.add_subcommand("recognize", "Recognize one sample with trained models");
  std::size_t sample_index = 0;
  bool as_json = false;
  rec->add_option("--models", models, "Model directory")->required();
  rec->add_option("--in", in, "Ink file")->required();
  rec->add_option("--sample", sample_index, "Index of the sample in the file")
      ->capture_default_str();
  rec->add_flag("--json", as_json, "Print the full response document");

  auto* serve = app.add_subcommand("serve", "Local HTTP recognition service");
  int port = kDefaultPort;
  std::string host = "127.0.0.1";
  serve->add_option("--models", models, "Model directory");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!isa.empty()) {
      const auto parsed = simd::parse_isa(isa);
      if (!parsed) throw ConfigError("unknown kernel variant '" + isa + "'");
      simd::select_isa(*parsed);
    }
    cfg.train.seed = seed;

    if (gen->parsed()) {
      auto templates = default_templates();
      if (classes < 1 || classes > templates.size()) {
        throw ConfigError("--classes must lie in [1, " + std::to_string(templates.size()) + "]");
      }
      templates.resize(classes);
      emit(write_ink_file(generate(templates, per_class, noise, seed)), out);
    } else if (pre->parsed()) {
      cfg.preprocess.validate();
      std::vector<InkSample> smoothed;
      for (const InkSample& s : load_samples(in)) {
        smoothed.push_back(smooth_sample(s, cfg.preprocess));
      }
      emit(write_ink_file(smoothed), out);
    } else if (seg->parsed()) {
      window_half_width(1, cfg.window_fraction);
      emit(segment_document(load_samples(in), cfg.window_fraction), out);
    } else if (feat->parsed()) {
      window_half_width(1, cfg.window_fraction);
      emit(featurize_file(in, cfg.window_fraction), out);
    } else if (train->parsed()) {
      const auto prepared = prepare_all(load_samples(in), cfg);
      const Recognizer r = Recognizer::train(prepared, cfg);
      r.save(models);
      for (const ClusterTrainingSummary& s : r.summaries()) {
        std::cerr << "cluster " << s.cluster_id << ": " << s.samples << " samples, "
                  << s.epochs << " epochs, final loss " << s.final_loss << "\n";
      }
      std::cout << "wrote " << r.classifiers().size() << " cluster model(s) to "
                << models << "\n";
    } else if (eval->parsed() || mc->parsed()) {
      const auto prepared = prepare_all(load_samples(in), cfg);
      if (mc->parsed() || protocol == "montecarlo") {
        const MonteCarloReport r = monte_carlo(prepared, iterations, seed, cfg, threads);
        std::cout << to_text(r);
        if (!json_out.empty()) write_text_file(json_out, to_json(r).dump(2) + "\n");
      } else {
        const EvalReport r = protocol == "split"
                                 ? evaluate_split(prepared, seed, cfg)
                                 : kfold(prepared, k, seed, cfg, threads);
        std::cout << to_text(r);
        if (!json_out.empty()) write_text_file(json_out, to_json(r).dump(2) + "\n");
      }
    } else if (stats->parsed()) {
      const auto prepared = prepare_all(load_samples(in), cfg);
      const TokenStats s = token_stats(prepared);
      std::cout << to_text(s);
      if (!json_out.empty()) write_text_file(json_out, to_json(s).dump(2) + "\n");
    } else if (rec->parsed()) {
      const Recognizer r = Recognizer::load(models);
      const auto samples = load_samples(in);
      if (sample_index >= samples.size()) {
        throw ConfigError("--sample " + std::to_string(sample_index) + " out of range; file has " +
                          std::to_string(samples.size()) + " sample(s)");
      }
      const json doc = recognition_response(r, samples[sample_index]);
      if (as_json) {
        std::cout << doc.dump(2) << "\n";
      } else {
        if (doc["label"].is_null()) {
          throw Error("no classifier trained for cluster " + doc["cluster_id"].dump());
        }
        std::cout << "label       " << doc["label"].get<std::string>() << "\n"
                  << "confidence  " << doc["confidence"].get<double>() << "\n"
                  << "cluster     " << doc["cluster_id"].get<int>() << "\n"
                  << "tokens      " << doc["token_count"].get<std::size_t>() << "\n";
        for (std::size_t s = 0; s < doc["strokes"].size(); ++s) {
          std::cout << "  stroke " << s << ":";
          for (const json& t : doc["strokes"][s]["tokens"]) {
            std::cout << " [" << t["start"] << ".." << t["end"] << "]";
          }
          std::cout << "\n";
        }
      }
    } else if (serve->parsed()) {
      std::shared_ptr<const Recognizer> recognizer;
      if (!models.empty()) recognizer = std::make_shared<const Recognizer>(Recognizer::load(models));
      std::cerr << "serving on http://" << host << ":" << port
                << (recognizer ? "" : " (no model loaded)") << "\n";
      run_server(Service(recognizer), host, port);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
