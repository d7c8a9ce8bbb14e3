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

#include "crowdlift/llmfeat/client.h"

#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "crowdlift/common/error.h"
#include "crowdlift/common/hash.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/llmfeat/mock_provider.h"
#include "crowdlift/llmfeat/remote_provider.h"

namespace crowdlift::llm {

void LlmClientConfig::Validate() const {
  if (sampling_temperature < 0) throw ValidationError("sampling_temperature must be >= 0");
  if (retry_limit < 1) throw ValidationError("retry_limit must be >= 1");
  if (max_in_flight < 1) throw ValidationError("max_in_flight must be >= 1");
  if (provider == ProviderKind::kRemote && model_id.empty()) {
    throw ValidationError("remote provider needs a model_id");
  }
}

LlmClientConfig LlmClientConfig::FromJson(const nlohmann::json& j) {
  LlmClientConfig c;
  const std::string provider = j.value("provider", std::string("mock"));
  if (provider == "mock") {
    c.provider = ProviderKind::kMock;
  } else if (provider == "remote") {
    c.provider = ProviderKind::kRemote;
  } else {
    throw ValidationError("llm.provider must be 'mock' or 'remote', got '" + provider + "'");
  }
  c.model_id = j.value("model_id", c.model_id);
  c.sampling_temperature = j.value("sampling_temperature", c.sampling_temperature);
  c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  c.retry_limit = j.value("retry_limit", c.retry_limit);
  c.cache_dir = j.value("cache_dir", std::string());
  c.initial_backoff =
      std::chrono::milliseconds(j.value("initial_backoff_ms", c.initial_backoff.count()));
  c.Validate();
  return c;
}

nlohmann::json LlmClientConfig::ToJson() const {
  return {{"provider", provider == ProviderKind::kMock ? "mock" : "remote"},
          {"model_id", model_id},
          {"sampling_temperature", sampling_temperature},
          {"max_in_flight", max_in_flight},
          {"retry_limit", retry_limit},
          {"cache_dir", cache_dir.string()},
          {"initial_backoff_ms", initial_backoff.count()}};
}

LlmClient::LlmClient(LlmClientConfig config, std::unique_ptr<LlmProvider> provider)
    : config_(std::move(config)), provider_(std::move(provider)) {
  config_.Validate();
  if (!config_.cache_dir.empty()) std::filesystem::create_directories(config_.cache_dir);
}

std::unique_ptr<LlmClient> LlmClient::Create(const LlmClientConfig& config) {
  std::unique_ptr<LlmProvider> provider;
  if (config.provider == ProviderKind::kMock) {
    provider = std::make_unique<MockProvider>();
  } else {
    provider = std::make_unique<RemoteProvider>(RemoteProvider::Options::FromEnvironment());
  }
  return std::make_unique<LlmClient>(config, std::move(provider));
}

std::string LlmClient::CacheKey(std::string_view prompt) const {
  std::string material = config_.model_id;
  material.push_back('\0');
  material += FormatDouble(config_.sampling_temperature);
  material.push_back('\0');
  material.append(prompt);
  return Sha256Hex(material);
}

std::string LlmClient::CallWithCache(std::string_view prompt, bool refresh) {
  const std::string key = CacheKey(prompt);
  const std::filesystem::path file =
      config_.cache_dir.empty() ? std::filesystem::path() : config_.cache_dir / (key + ".txt");
  std::promise<std::string> promise;
  {
    std::unique_lock lock(cache_mu_);
    if (!refresh) {
      if (auto it = memory_cache_.find(key); it != memory_cache_.end()) return it->second;
      if (!file.empty() && std::filesystem::exists(file)) {
        std::string reply = ReadFileToString(file.string());
        memory_cache_.emplace(key, reply);
        return reply;
      }
      // Identical request already on the wire: wait for it instead of
      // issuing a second provider call.
      if (auto it = pending_.find(key); it != pending_.end()) {
        std::shared_future<std::string> waiting = it->second;
        lock.unlock();
        return waiting.get();
      }
    }
    pending_[key] = promise.get_future().share();
  }
  std::string reply;
  try {
    reply = CallProvider(prompt);
  } catch (...) {
    std::lock_guard lock(cache_mu_);
    pending_.erase(key);
    promise.set_exception(std::current_exception());
    throw;
  }
  std::lock_guard lock(cache_mu_);
  memory_cache_[key] = reply;
  if (!file.empty()) {
    // Write-then-rename so a concurrent reader never sees a partial entry.
    const auto tmp = file.string() + ".tmp";
    WriteStringToFile(tmp, reply);
    std::filesystem::rename(tmp, file);
  }
  pending_.erase(key);
  promise.set_value(reply);
  return reply;
}

std::string LlmClient::CallProvider(std::string_view prompt) {
  {
    std::unique_lock lock(slots_mu_);
    slots_cv_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
    ++in_flight_;
  }
  struct SlotRelease {
    LlmClient* self;
    ~SlotRelease() {
      {
        std::lock_guard lock(self->slots_mu_);
        --self->in_flight_;
      }
      self->slots_cv_.notify_one();
    }
  } release{this};

  const CompletionRequest request{config_.model_id, config_.sampling_temperature,
                                  std::string(prompt)};
  auto delay = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.retry_limit; ++attempt) {
    ++provider_calls_;
    try {
      return provider_->Complete(request);
    } catch (const ProviderError& e) {
      last_error = e.what();
      LogWarning("provider attempt " + std::to_string(attempt) + "/" +
                 std::to_string(config_.retry_limit) + " failed: " + last_error);
    }
    if (attempt < config_.retry_limit && delay.count() > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
  throw ProviderError("provider '" + std::string(provider_->name()) + "' failed after " +
                      std::to_string(config_.retry_limit) + " attempts: " + last_error);
}

}  // namespace crowdlift::llm
