// Copyright 2026 The HQA Authors
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


// HTTP front end: analysis, template listing and health endpoints.

#ifndef HQA_TOOLS_SERVICE_HPP_
#define HQA_TOOLS_SERVICE_HPP_

#include <memory>
#include <string>
#include <string_view>

#include "hqa/templates.hpp"

namespace hqa::tools {

struct Response {
  int status = 200;
  std::string body;  // JSON document
};

// Request handlers, independent of the transport. Errors map to 400 for
// malformed or invalid ink, 404 for an unknown target and 500 otherwise; the
// body is then {"error": message}.
Response handle_analyze(const TemplateSet& templates, std::string_view body);
Response handle_templates(const TemplateSet& templates);
Response handle_health(const TemplateSet& templates);

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "*";
};

// Serves the handlers under /v1. The template set is shared read-only by all
// request threads and must outlive the server.
class Service {
 public:
  Service(const TemplateSet& templates, ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the socket; returns the bound port. Throws Error on failure.
  int bind();
  // Blocks until stop() is called. Requires bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hqa::tools

#endif  // HQA_TOOLS_SERVICE_HPP_
