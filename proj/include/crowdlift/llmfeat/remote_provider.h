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

#ifndef CROWDLIFT_LLMFEAT_REMOTE_PROVIDER_H_
#define CROWDLIFT_LLMFEAT_REMOTE_PROVIDER_H_

#include <chrono>
#include <string>

#include "crowdlift/llmfeat/client.h"

namespace crowdlift::llm {

// Chat-completions over HTTPS (OpenAI wire format).
class RemoteProvider : public LlmProvider {
 public:
  struct Options {
    // Full URL, e.g. https://api.openai.com/v1/chat/completions.
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string api_key;
    std::chrono::seconds timeout{120};

    // CROWDLIFT_LLM_ENDPOINT overrides the endpoint; OPENAI_API_KEY supplies
    // the key.
    static Options FromEnvironment();
  };

  explicit RemoteProvider(Options options);

  std::string Complete(const CompletionRequest& request) override;
  std::string_view name() const override { return "remote"; }

  // Request body for a chat completion with a single user message.
  static std::string BuildRequestBody(const CompletionRequest& request);
  // Extracts choices[0].message.content; throws ProviderError otherwise.
  static std::string ParseResponseBody(const std::string& body);

 private:
  Options options_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_REMOTE_PROVIDER_H_
