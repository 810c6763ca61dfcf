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


#include "hqa/tools/service.hpp"

#include <exception>
#include <utility>

// Ink documents may arrive without a JSON content type; accept them whole.
#define CPPHTTPLIB_FORM_URL_ENCODED_PAYLOAD_MAX_LENGTH (16 * 1024 * 1024)
#include "httplib.h"
#include "json.hpp"

#include "hqa/errors.hpp"
#include "hqa/ink_io.hpp"
#include "hqa/pipeline.hpp"

namespace hqa::tools {
namespace {

using Json = nlohmann::ordered_json;

Response error_response(int status, std::string_view message) {
  return {status, Json{{"error", message}}.dump() + "\n"};
}

}  // namespace

Response handle_analyze(const TemplateSet& templates, std::string_view body) {
  try {
    const InkSample sample = read_sample(body);
    const PreparedTemplate* tpl = templates.find(sample.meta.target);
    if (!tpl) return error_response(404, "no template for target '" + sample.meta.target + "'");
    return {200, report_json(analyze(extract_features(sample, tpl->data().config), *tpl))};
  } catch (const InputError& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

Response handle_templates(const TemplateSet& templates) {
  Json list = Json::array();
  for (const auto& name : templates.targets()) {
    const Template& t = templates.find(name)->data();
    list.push_back({{"target", t.target},
                    {"script", std::string(to_string(t.script))},
                    {"guidelines",
                     {{"baseline_y", t.guidelines.baseline_y},
                      {"median_top_y", t.guidelines.median_top_y}}}});
  }
  return {200, Json{{"targets", list}}.dump(2) + "\n"};
}

Response handle_health(const TemplateSet& templates) {
  return {200, Json{{"status", "ok"}, {"templates", templates.size()}}.dump() + "\n"};
}

struct Service::Impl {
  const TemplateSet& templates;
  ServiceOptions options;
  httplib::Server server;
  int port = -1;

  Impl(const TemplateSet& t, ServiceOptions o) : templates(t), options(std::move(o)) {}
};

Service::Service(const TemplateSet& templates, ServiceOptions options)
    : impl_(std::make_unique<Impl>(templates, std::move(options))) {
  auto& s = impl_->server;
  const std::string origin = impl_->options.cors_origin;
  s.set_default_headers({{"Access-Control-Allow-Origin", origin},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type"}});
  const auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  const TemplateSet& set = impl_->templates;
  s.Post("/v1/analyze", [&set, send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_analyze(set, req.body));
  });
  s.Get("/v1/templates", [&set, send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_templates(set));
  });
  s.Get("/v1/health", [&set, send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_health(set));
  });
  s.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
}

Service::~Service() { stop(); }

int Service::bind() {
  auto& i = *impl_;
  if (i.options.port == 0) {
    i.port = i.server.bind_to_any_port(i.options.host);
  } else if (i.server.bind_to_port(i.options.host, i.options.port)) {
    i.port = i.options.port;
  }
  if (i.port <= 0) {
    throw Error("cannot bind " + i.options.host + ":" + std::to_string(i.options.port));
  }
  return i.port;
}

void Service::run() {
  if (impl_->port <= 0) throw Error("service is not bound");
  impl_->server.listen_after_bind();
}

void Service::stop() { impl_->server.stop(); }

}  // namespace hqa::tools
