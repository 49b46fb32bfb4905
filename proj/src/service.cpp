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

#include "inkrec/service.hpp"

#include "httplib.h"
#include "inkrec/error.hpp"

namespace inkrec {
namespace {

struct RequestError {
  int status;
  std::string message;
};

HttpResponse error_response(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

struct RequestInk {
  InkSample sample;
  std::size_t duplicates_dropped = 0;
};

RequestInk parse_request(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body.begin(), body.end());
  } catch (const json::parse_error& e) {
    throw RequestError{400, std::string("malformed JSON: ") + e.what()};
  }
  if (!doc.is_object() || !doc.contains("strokes") || !doc["strokes"].is_array()) {
    throw RequestError{400, "body must be an object with a \"strokes\" array"};
  }
  const json& strokes = doc["strokes"];
  if (strokes.empty()) throw RequestError{422, "no strokes"};
  std::size_t dropped = 0;
  std::vector<Stroke> built;
  for (std::size_t i = 0; i < strokes.size(); ++i) {
    const std::string where = "strokes[" + std::to_string(i) + "]";
    std::vector<InkPoint> points;
    try {
      points = stroke_points_from_json(strokes[i], where, dropped);
    } catch (const ParseError& e) {
      throw RequestError{400, e.what()};
    }
    try {
      built.emplace_back(std::move(points));
    } catch (const std::invalid_argument& e) {
      throw RequestError{422, where + ": " + e.what()};
    }
  }
  return {InkSample(std::string(kUnlabeled), std::move(built)), dropped};
}

}  // namespace

json recognition_response(const Recognizer& recognizer, const InkSample& sample) {
  const PreparedSample prepared = prepare(sample, recognizer.config());
  const Recognition r = recognizer.classify(prepared);
  json scores = json::array();
  for (const ClassScore& s : r.scores) scores.push_back({{"label", s.label}, {"score", s.score}});
  return {{"label", r.label.empty() ? json(nullptr) : json(r.label)},
          {"confidence", r.confidence},
          {"cluster_id", r.cluster_id},
          {"token_count", prepared.segmentation.token_count()},
          {"truncated_tokens", prepared.encoding.truncated},
          {"strokes", segmentation_to_json(prepared.segmentation)},
          {"features", features_to_json(prepared.features)},
          {"scores", std::move(scores)}};
}

Service::Service(std::shared_ptr<const Recognizer> recognizer)
    : recognizer_(std::move(recognizer)) {}

HttpResponse Service::health() const {
  if (!recognizer_) return {503, json{{"status", "no model loaded"}}.dump()};
  return {200, json{{"status", "ok"}}.dump()};
}

HttpResponse Service::model() const {
  if (!recognizer_) return error_response(503, "no model loaded");
  return {200, recognizer_->manifest().dump()};
}

HttpResponse Service::recognize(std::string_view body) const {
  try {
    const RequestInk ink = parse_request(body);
    if (!recognizer_) return error_response(503, "no model loaded");
    json out = recognition_response(*recognizer_, ink.sample);
    out["duplicates_dropped"] = ink.duplicates_dropped;
    return {200, out.dump()};
  } catch (const RequestError& e) {
    return error_response(e.status, e.message);
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

HttpResponse Service::echo(std::string_view body) const {
  try {
    const RequestInk ink = parse_request(body);
    json strokes = json::array();
    for (const Stroke& s : ink.sample.strokes()) strokes.push_back(stroke_to_json(s));
    return {200, json{{"strokes", std::move(strokes)},
                      {"duplicates_dropped", ink.duplicates_dropped}}
                     .dump()};
  } catch (const RequestError& e) {
    return error_response(e.status, e.message);
  }
}

namespace {

bool is_local_origin(const std::string& origin) {
  for (const std::string_view prefix :
       {"http://localhost", "http://127.0.0.1", "https://localhost", "https://127.0.0.1"}) {
    if (origin.rfind(prefix, 0) == 0) {
      const auto rest = origin.substr(prefix.size());
      if (rest.empty() || rest.front() == ':') return true;
    }
  }
  return false;
}

void add_cors(const httplib::Request& req, httplib::Response& res) {
  const std::string origin = req.get_header_value("Origin");
  if (!origin.empty() && is_local_origin(origin)) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Vary", "Origin");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }
}

void send(const HttpResponse& r, httplib::Response& res) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

void Service::mount(httplib::Server& server) const {
  server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    send(health(), res);
  });
  server.Get("/api/model", [this](const httplib::Request&, httplib::Response& res) {
    send(model(), res);
  });
  server.Post("/api/recognize", [this](const httplib::Request& req, httplib::Response& res) {
    send(recognize(req.body), res);
  });
  server.Post("/api/echo", [this](const httplib::Request& req, httplib::Response& res) {
    send(echo(req.body), res);
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.set_post_routing_handler(
      [](const httplib::Request& req, httplib::Response& res) { add_cors(req, res); });
}

void run_server(const Service& service, const std::string& host, int port) {
  httplib::Server server;
  service.mount(server);
  if (!server.listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace inkrec
