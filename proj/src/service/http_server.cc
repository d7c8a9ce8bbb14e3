/*
 * Copyright 2026 The Crowdlift Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "crowdlift/service/http_server.h"

#include "httplib.h"

#include "crowdlift/common/error.h"

namespace crowdlift::service {
namespace {

void Send(const Response& r, httplib::Response& res) {
  res.status = r.status;
  for (const auto& [k, v] : r.headers) res.set_header(k, v);
  res.set_content(r.body, "application/json");
}

}  // namespace

struct HttpServer::Impl {
  ScoringService& service;
  httplib::Server server;
};

HttpServer::HttpServer(ScoringService& service) : impl_(new Impl{service, {}}) {
  auto& s = impl_->server;
  ScoringService& svc = impl_->service;
  s.Post("/score", [&svc](const httplib::Request& req, httplib::Response& res) {
    Send(svc.Score(req.body), res);
  });
  s.Post("/augment", [&svc](const httplib::Request& req, httplib::Response& res) {
    Send(svc.Augment(req.body), res);
  });
  s.Get("/model/info", [&svc](const httplib::Request&, httplib::Response& res) {
    Send(svc.ModelInfo(), res);
  });
  s.Get("/healthz", [&svc](const httplib::Request&, httplib::Response& res) {
    Send(svc.Healthz(), res);
  });
  // Only fills in bodies for statuses no handler produced itself.
  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const char* code = res.status == 404 ? "not_found" : "http_error";
    Send(ScoringService::ErrorResponse(res.status, code, "no handler for " + req.method + " " + req.path),
         res);
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "unknown error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    Send(ScoringService::ErrorResponse(500, "internal_error", what), res);
  });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::Serve() { impl_->server.listen_after_bind(); }

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace crowdlift::service
