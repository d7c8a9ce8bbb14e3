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

#include "crowdlift/llmfeat/augment.h"

#include <cmath>

#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/llmfeat/gpt_features.h"
#include "crowdlift/llmfeat/prompts.h"
#include "crowdlift/textfeat/tokenizer.h"

namespace crowdlift::llm {
namespace {

std::string RequireString(const nlohmann::json& obj, std::string_view field) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (NormalizeReplyKey(it.key()) == field && it.value().is_string()) {
      return it.value().get<std::string>();
    }
  }
  throw SchemaError(std::string(field), "reply is missing field '" + std::string(field) + "'");
}

void CheckPrefix(std::string_view original, const AugmentationResult& r, const std::string& raw) {
  for (const auto* field : {&r.correct_three, &r.add_gratitude}) {
    if (!std::string_view(*field).starts_with(original)) {
      const char* name = field == &r.correct_three ? "correct_three" : "add_gratitude";
      throw RewriteViolationError(RewriteViolationError::Kind::kPrefix,
                                  std::string(name) + " does not begin with the original text",
                                  raw);
    }
  }
}

}  // namespace

AugmentationResult ParseAugmentationReply(std::string_view reply) {
  const nlohmann::json obj = ParseJsonReply(reply);
  AugmentationResult r;
  r.correct_three = RequireString(obj, "correct_three");
  r.add_gratitude = RequireString(obj, "add_gratitude");
  r.minus_gratitude = RequireString(obj, "minus_gratitude");
  return r;
}

AugmentationResult AugmentThree(std::string_view description, LlmClient& client) {
  if (Trim(description).empty()) throw ValidationError("augmentation needs a nonempty description");
  const std::string prompt = RenderPrompt(
      PromptId::kAugmentation, {{"TEXT", description}});
  for (int attempt = 0;; ++attempt) {
    const std::string raw = client.CallWithCache(prompt, /*refresh=*/attempt > 0);
    try {
      AugmentationResult r = ParseAugmentationReply(raw);
      CheckPrefix(description, r, raw);
      return r;
    } catch (const ValidationError& e) {
      if (attempt > 0) throw;
      LogWarning(std::string("augmentation reply rejected, retrying once: ") + e.what());
    }
  }
}

void CheckExtension(std::string_view original, std::string_view extended,
                    std::size_t target_added_words) {
  const text::TokenizedText a = text::Tokenize(original);
  const text::TokenizedText b = text::Tokenize(extended);
  const std::string raw(extended);
  if (b.sentences.empty() ||
      Trim(a.SentenceText(0)) != Trim(b.SentenceText(0)) ||
      Trim(a.SentenceText(a.sentences.size() - 1)) !=
          Trim(b.SentenceText(b.sentences.size() - 1))) {
    throw RewriteViolationError(RewriteViolationError::Kind::kBoundarySentence,
                                "extension changed the first or last sentence", raw);
  }
  const double added = static_cast<double>(b.tokens.size()) - static_cast<double>(a.tokens.size());
  const double target = static_cast<double>(target_added_words);
  if (std::abs(added - target) > kExtensionTolerance * target) {
    throw RewriteViolationError(RewriteViolationError::Kind::kLengthTolerance,
                                "extension added " + FormatDouble(added) + " words, target " +
                                    FormatDouble(target) + " +/- 25%",
                                raw);
  }
}

std::string ExtendNeutral(std::string_view description, std::size_t target_added_words,
                          LlmClient& client) {
  if (text::Tokenize(description).sentences.size() < 2) {
    throw ValidationError("neutral extension needs a description of at least two sentences");
  }
  const std::string length = std::to_string(target_added_words);
  const std::string prompt =
      RenderPrompt(PromptId::kExtension, {{"TEXT", description}, {"LENGTH", length}});
  for (int attempt = 0;; ++attempt) {
    std::string reply(Trim(client.CallWithCache(prompt, /*refresh=*/attempt > 0)));
    try {
      CheckExtension(description, reply, target_added_words);
      return reply;
    } catch (const RewriteViolationError& e) {
      if (attempt > 0) throw;
      LogWarning(std::string("extension reply rejected, retrying once: ") + e.what());
    }
  }
}

}  // namespace crowdlift::llm
