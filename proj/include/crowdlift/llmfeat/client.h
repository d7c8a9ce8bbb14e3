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

#ifndef CROWDLIFT_LLMFEAT_CLIENT_H_
#define CROWDLIFT_LLMFEAT_CLIENT_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "nlohmann/json.hpp"

namespace crowdlift::llm {

enum class ProviderKind { kRemote, kMock };

struct LlmClientConfig {
  ProviderKind provider = ProviderKind::kMock;
  std::string model_id = "gpt-4-1106-preview";
  double sampling_temperature = 0.0;
  int max_in_flight = 4;
  // Total provider attempts per request, including the first.
  int retry_limit = 3;
  // Empty keeps the cache in memory only.
  std::filesystem::path cache_dir;
  // First backoff delay; doubles on every further attempt.
  std::chrono::milliseconds initial_backoff{500};

  // Throws ValidationError when an invariant is broken.
  void Validate() const;

  static LlmClientConfig FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

struct CompletionRequest {
  std::string model_id;
  double temperature = 0.0;
  std::string prompt;
};

// A chat-completion backend. Implementations throw ProviderError on any
// failure that may be retried.
class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  virtual std::string Complete(const CompletionRequest& request) = 0;
  virtual std::string_view name() const = 0;
};

// Content-addressed reply cache in front of a provider, with retries,
// exponential backoff and a bound on concurrent provider requests.
class LlmClient {
 public:
  LlmClient(LlmClientConfig config, std::unique_ptr<LlmProvider> provider);

  // Builds the provider named by the config (mock, or remote configured from
  // the environment).
  static std::unique_ptr<LlmClient> Create(const LlmClientConfig& config);

  // Returns the cached reply for (prompt, model_id, temperature) or asks the
  // provider. `refresh` skips the cache lookup and overwrites the entry.
  std::string CallWithCache(std::string_view prompt, bool refresh = false);

  std::string CacheKey(std::string_view prompt) const;

  const LlmClientConfig& config() const { return config_; }
  LlmProvider& provider() { return *provider_; }
  // Number of times the provider was actually invoked (attempts included).
  std::int64_t provider_calls() const { return provider_calls_.load(); }

 private:
  std::string CallProvider(std::string_view prompt);

  LlmClientConfig config_;
  std::unique_ptr<LlmProvider> provider_;
  std::atomic<std::int64_t> provider_calls_{0};

  std::mutex cache_mu_;
  std::map<std::string, std::string> memory_cache_;
  std::map<std::string, std::shared_future<std::string>> pending_;

  std::mutex slots_mu_;
  std::condition_variable slots_cv_;
  int in_flight_ = 0;
};

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_CLIENT_H_
