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

#include "crowdlift/llmfeat/gpt_features.h"

#include <map>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/llmfeat/prompts.h"

namespace crowdlift::llm {
namespace {

struct FlagSpec {
  GptFlag flag;
  std::string_view name;
  std::string_view label;
  std::string_view verdict_key;       // normalized
  std::string_view explanation_key;   // normalized, empty if none
};

constexpr std::array<FlagSpec, kGptFlagCount> kSpecs = {{
    {GptFlag::kEmployeesMentioned, "employees_mentioned", "Employees mentioned",
     "employee mentioned", "employee explanation"},
    {GptFlag::kRentMentioned, "rent_mentioned", "Rent mentioned", "rent mentioned",
     "rent explanation"},
    {GptFlag::kBusinessLonger2y, "business_longer_2y", "Business longer than 2 years",
     "business longer than 2 years", "long history explanation"},
    {GptFlag::kNewBusiness, "new_business", "New business", "new business",
     "new business explanation"},
    {GptFlag::kMatchGrantMentioned, "match_grant_mentioned", "Match grant mentioned",
     "match grant mentioned", "grant explanation"},
    {GptFlag::kGratitudeExpressed, "gratitude_expressed", "Gratitude expressed",
     "gratitude expressed", "gratitude explanation"},
    {GptFlag::kUrgencyExplained, "urgency_explained", "Urgency explained", "urgency explained",
     "urgency explanation"},
    {GptFlag::kSocialComparisonBetter, "social_comparison_better",
     "Social comparison (better than peers)", "social comparison (better than peers)",
     "social comparison better explanation"},
    {GptFlag::kSelfComparisonWorse, "self_comparison_worse",
     "Self comparison (worse than before)", "self comparison (worse than before)",
     "self comparison worse explanation"},
    {GptFlag::kSmallBusinessSpecified, "small_business_specified", "Small business specified",
     "small business specified", ""},
    {GptFlag::kExtrinsicIncentive, "extrinsic_incentive", "Extrinsic incentive",
     "extrinsic incentive", "extrinsic incentive explanation"},
}};

const FlagSpec& Spec(GptFlag f) { return kSpecs[static_cast<std::size_t>(f)]; }

using KeyMap = std::map<std::string, const nlohmann::json*>;

KeyMap NormalizedKeys(const nlohmann::json& obj) {
  KeyMap out;
  for (auto it = obj.begin(); it != obj.end(); ++it) out[NormalizeReplyKey(it.key())] = &it.value();
  return out;
}

std::optional<bool> AsVerdict(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const std::string s = AsciiLower(Trim(v.get<std::string>()));
    if (s == "true") return true;
    if (s == "false") return false;
  }
  return std::nullopt;
}

bool RequireVerdict(const KeyMap& keys, std::string_view key, std::string_view field) {
  auto it = keys.find(std::string(key));
  if (it == keys.end()) {
    throw SchemaError(std::string(field), "reply is missing field '" + std::string(field) + "'");
  }
  const auto v = AsVerdict(*it->second);
  if (!v) {
    throw SchemaError(std::string(field),
                      "field '" + std::string(field) + "' is not TRUE or FALSE");
  }
  return *v;
}

template <typename Parse>
auto WithSchemaRetry(std::string_view prompt, LlmClient& client, Parse parse) {
  const std::string first = client.CallWithCache(prompt);
  try {
    return parse(first);
  } catch (const SchemaError& e) {
    LogWarning(std::string("schema-invalid reply, retrying once: ") + e.what());
  }
  return parse(client.CallWithCache(prompt, /*refresh=*/true));
}

}  // namespace

const std::array<GptFlag, kGptFlagCount>& AllGptFlags() {
  static const std::array<GptFlag, kGptFlagCount> kFlags = [] {
    std::array<GptFlag, kGptFlagCount> a{};
    for (std::size_t i = 0; i < kGptFlagCount; ++i) a[i] = kSpecs[i].flag;
    return a;
  }();
  return kFlags;
}

std::string_view GptFlagName(GptFlag flag) { return Spec(flag).name; }
std::string_view GptFlagLabel(GptFlag flag) { return Spec(flag).label; }

std::string NormalizeReplyKey(std::string_view key) {
  std::string_view k = Trim(key);
  if (k.size() >= 2 && k.front() == '[' && k.back() == ']') k = Trim(k.substr(1, k.size() - 2));
  return AsciiLower(k);
}

nlohmann::json ParseJsonReply(std::string_view reply) {
  std::string_view body = Trim(reply);
  if (body.starts_with("```")) {
    const auto first_newline = body.find('\n');
    const auto closing = body.rfind("```");
    if (first_newline != std::string_view::npos && closing > first_newline) {
      body = Trim(body.substr(first_newline + 1, closing - first_newline - 1));
    }
  }
  // Tolerate prose around the object.
  const auto open = body.find('{');
  const auto close = body.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw SchemaError("<reply>", "reply contains no JSON object");
  }
  try {
    return nlohmann::json::parse(body.substr(open, close - open + 1));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("<reply>", std::string("reply is not valid JSON: ") + e.what());
  }
}

GptFeatureSet ParseGptFeatureReply(std::string_view reply) {
  const nlohmann::json obj = ParseJsonReply(reply);
  if (!obj.is_object()) throw SchemaError("<reply>", "reply is not a JSON object");
  const KeyMap keys = NormalizedKeys(obj);
  GptFeatureSet out;
  for (const FlagSpec& spec : kSpecs) {
    out.Set(spec.flag, RequireVerdict(keys, spec.verdict_key, spec.name));
    if (spec.explanation_key.empty()) continue;
    auto it = keys.find(std::string(spec.explanation_key));
    if (it == keys.end() || !it->second->is_string()) {
      throw SchemaError(std::string(spec.name) + "_explanation",
                        "reply is missing explanation for '" + std::string(spec.name) + "'");
    }
    out.explanations[static_cast<std::size_t>(spec.flag)] = it->second->get<std::string>();
  }
  auto tag = keys.find("tag");
  if (tag == keys.end() || !tag->second->is_string()) {
    throw SchemaError("tag", "reply is missing field 'tag'");
  }
  out.tag = tag->second->get<std::string>();
  return out;
}

GptFeatureSet ExtractGptFeatures(std::string_view description, LlmClient& client) {
  const std::string prompt = RenderPrompt(PromptId::kFeatureGeneration, {{"TEXT", description}});
  return WithSchemaRetry(prompt, client,
                         [](const std::string& reply) { return ParseGptFeatureReply(reply); });
}

SmallBusinessVerdict ParseSmallBusinessReply(std::string_view reply) {
  const nlohmann::json obj = ParseJsonReply(reply);
  if (!obj.is_object()) throw SchemaError("<reply>", "reply is not a JSON object");
  const KeyMap keys = NormalizedKeys(obj);
  SmallBusinessVerdict v;
  v.business = RequireVerdict(keys, "business", "business");
  if (auto it = keys.find("business_explanation"); it != keys.end() && it->second->is_string()) {
    v.business_explanation = it->second->get<std::string>();
  }
  if (!v.business) {
    v.owner_support = RequireVerdict(keys, "owner_support", "owner_support");
    if (auto it = keys.find("owner_support_explanation");
        it != keys.end() && it->second->is_string()) {
      v.owner_support_explanation = it->second->get<std::string>();
    }
  }
  return v;
}

SmallBusinessVerdict ValidateSmallBusiness(std::string_view description, LlmClient& client) {
  const std::string prompt =
      RenderPrompt(PromptId::kSmallBusinessValidation, {{"TEXT", description}});
  return WithSchemaRetry(prompt, client,
                         [](const std::string& reply) { return ParseSmallBusinessReply(reply); });
}

}  // namespace crowdlift::llm
