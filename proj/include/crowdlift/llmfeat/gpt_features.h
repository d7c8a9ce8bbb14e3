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

#ifndef CROWDLIFT_LLMFEAT_GPT_FEATURES_H_
#define CROWDLIFT_LLMFEAT_GPT_FEATURES_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"

#include "crowdlift/llmfeat/client.h"

namespace crowdlift::llm {

enum class GptFlag {
  kEmployeesMentioned,
  kRentMentioned,
  kBusinessLonger2y,
  kNewBusiness,
  kMatchGrantMentioned,
  kGratitudeExpressed,
  kUrgencyExplained,
  kSocialComparisonBetter,
  kSelfComparisonWorse,
  kSmallBusinessSpecified,
  kExtrinsicIncentive,
};

inline constexpr std::size_t kGptFlagCount = 11;

// Flags in prompt task order.
const std::array<GptFlag, kGptFlagCount>& AllGptFlags();
// Feature column name, e.g. "gratitude_expressed".
std::string_view GptFlagName(GptFlag flag);
// Human-readable label used in audit reports, e.g. "Gratitude expressed".
std::string_view GptFlagLabel(GptFlag flag);

struct GptFeatureSet {
  std::array<bool, kGptFlagCount> flags{};
  // Empty for flags whose task asks for no explanation.
  std::array<std::string, kGptFlagCount> explanations;
  std::string tag = "NO TAG";

  bool Get(GptFlag f) const { return flags[static_cast<std::size_t>(f)]; }
  void Set(GptFlag f, bool v) { flags[static_cast<std::size_t>(f)] = v; }

  friend bool operator==(const GptFeatureSet&, const GptFeatureSet&) = default;
};

// Parses a reply object (optionally wrapped in a ``` fence). Keys are matched
// case-insensitively with surrounding brackets ignored; verdicts may be JSON
// booleans or "TRUE"/"FALSE" strings. Throws SchemaError naming the first
// missing or malformed field.
GptFeatureSet ParseGptFeatureReply(std::string_view reply);

// Sends the feature-generation prompt and parses the reply. A schema-invalid
// reply is re-requested once (bypassing the cache) before the error is
// raised.
GptFeatureSet ExtractGptFeatures(std::string_view description, LlmClient& client);

struct SmallBusinessVerdict {
  bool business = false;
  std::string business_explanation;
  // Present only when business is false.
  std::optional<bool> owner_support;
  std::string owner_support_explanation;

  // Kept in the corpus when either answer is TRUE.
  bool Eligible() const { return business || owner_support.value_or(false); }
};

SmallBusinessVerdict ParseSmallBusinessReply(std::string_view reply);
SmallBusinessVerdict ValidateSmallBusiness(std::string_view description, LlmClient& client);

// Shared reply helpers.
nlohmann::json ParseJsonReply(std::string_view reply);
std::string NormalizeReplyKey(std::string_view key);

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_GPT_FEATURES_H_
