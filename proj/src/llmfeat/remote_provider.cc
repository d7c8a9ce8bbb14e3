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

#include "crowdlift/llmfeat/remote_provider.h"

#include <cstdlib>

#include "httplib.h"
#include "nlohmann/json.hpp"

#include "crowdlift/common/error.h"

namespace crowdlift::llm {

RemoteProvider::Options RemoteProvider::Options::FromEnvironment() {
  Options o;
  if (const char* endpoint = std::getenv("CROWDLIFT_LLM_ENDPOINT"); endpoint && *endpoint) {
    o.endpoint = endpoint;
  }
  if (const char* key = std::getenv("OPENAI_API_KEY"); key != nullptr) o.api_key = key;
  return o;
}

RemoteProvider::RemoteProvider(Options options) : options_(std::move(options)) {
  const auto scheme_end = options_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("LLM endpoint must be an absolute URL: " + options_.endpoint);
  }
  const auto path_begin = options_.endpoint.find('/', scheme_end + 3);
  scheme_host_port_ = options_.endpoint.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "/" : options_.endpoint.substr(path_begin);
}

std::string RemoteProvider::BuildRequestBody(const CompletionRequest& request) {
  nlohmann::json body = {
      {"model", request.model_id},
      {"temperature", request.temperature},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})}};
  return body.dump();
}

std::string RemoteProvider::ParseResponseBody(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed chat-completion response: ") + e.what());
  }
}

std::string RemoteProvider::Complete(const CompletionRequest& request) {
  if (options_.api_key.empty()) throw ProviderError("OPENAI_API_KEY is not set");
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_bearer_token_auth(options_.api_key);
  auto result = client.Post(path_, BuildRequestBody(request), "application/json");
  if (!result) {
    throw ProviderError("LLM request failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw ProviderError("LLM endpoint returned HTTP " + std::to_string(result->status));
  }
  return ParseResponseBody(result->body);
}

}  // namespace crowdlift::llm
