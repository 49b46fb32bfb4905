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

#include <memory>
#include <string>
#include <string_view>

#include "inkrec/ink_json.hpp"
#include "inkrec/recognizer.hpp"

namespace httplib {
class Server;
}

namespace inkrec {

inline constexpr int kDefaultPort = 8787;

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

// Full recognition response for one sample: label, confidence, cluster,
// per-stroke critical points and tokens, per-token features and per-class
// scores. The CLI `recognize --json` prints exactly this document.
json recognition_response(const Recognizer& recognizer, const InkSample& sample);

// Route handlers of the local recognition service, independent of the HTTP
// transport. The loaded model set is immutable; handlers are safe to call
// concurrently.
class Service {
 public:
  explicit Service(std::shared_ptr<const Recognizer> recognizer = nullptr);

  // GET /api/health: 200 once a model is loaded, 503 before.
  HttpResponse health() const;
  // GET /api/model: training manifest, or 503.
  HttpResponse model() const;
  // POST /api/recognize with {"strokes": [[[x, y], ...], ...]}.
  // 400 malformed body, 422 degenerate ink, 503 no model.
  HttpResponse recognize(std::string_view body) const;
  // POST /api/echo: returns the strokes exactly as the service parsed them.
  HttpResponse echo(std::string_view body) const;

  // Registers the routes and localhost CORS headers on `server`.
  void mount(httplib::Server& server) const;

 private:
  std::shared_ptr<const Recognizer> recognizer_;
};

// Blocks serving on host:port until the process is stopped.
void run_server(const Service& service, const std::string& host, int port);

}  // namespace inkrec
