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

#ifndef CROWDLIFT_SERVICE_HTTP_SERVER_H_
#define CROWDLIFT_SERVICE_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "crowdlift/service/service.h"

namespace crowdlift::service {

// HTTP/1.1 JSON front end: POST /score, POST /augment, GET /model/info,
// GET /healthz. Unknown routes answer 404 in the error envelope.
class HttpServer {
 public:
  explicit HttpServer(ScoringService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds the socket; port 0 picks a free port. Returns the bound port.
  // Throws IoError when the address cannot be bound.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind.
  void Serve();
  // Blocks until Serve() accepts connections.
  void WaitUntilReady() const;
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace crowdlift::service

#endif  // CROWDLIFT_SERVICE_HTTP_SERVER_H_
