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

#include "crowdlift/llmfeat/mock_provider.h"

#include <cmath>
#include <regex>

#include "nlohmann/json.hpp"

#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/llmfeat/prompts.h"
#include "crowdlift/textfeat/tokenizer.h"

namespace crowdlift::llm {
namespace {

constexpr std::string_view kValidationMarker = "Determine if the campaign is about a small business.";
constexpr std::string_view kFeatureMarker =
    "Check whether the author has mentioned that the raised funds is going to help the";
constexpr std::string_view kAugmentMarker = "correct_three";
constexpr std::string_view kExtensionMarker = "emotion-neutral words";

// Ten-word, affect-free filler used for neutral extension.
constexpr std::string_view kFillerSentences[] = {
    "This page describes the business and the plan described above.",
    "The details in this description remain the same as stated.",
    "The business continues to operate in the same location today.",
    "This campaign explains the situation of the business in detail.",
    "The information here repeats the main points of the description.",
};

bool HasWord(std::string_view lower, std::string_view word) {
  std::size_t pos = 0;
  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  while ((pos = lower.find(word, pos)) != std::string_view::npos) {
    const bool left = pos == 0 || !is_word(lower[pos - 1]);
    const std::size_t end = pos + word.size();
    const bool right = end >= lower.size() || !is_word(lower[end]);
    if (left && right) return true;
    pos = end;
  }
  return false;
}

bool HasAny(std::string_view lower, std::initializer_list<std::string_view> needles) {
  for (auto n : needles) {
    if (lower.find(n) != std::string_view::npos) return true;
  }
  return false;
}

bool HasAnyWord(std::string_view lower, std::initializer_list<std::string_view> words) {
  for (auto w : words) {
    if (HasWord(lower, w)) return true;
  }
  return false;
}

bool MentionsLongHistory(const std::string& lower) {
  static const std::regex kYears(R"((\d+)\+?\s+years)");
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), kYears);
       it != std::sregex_iterator(); ++it) {
    if (std::stoi((*it)[1].str()) >= 2) return true;
  }
  static const std::regex kSince(R"(\b(since|in|established|founded)\s+(19\d\d|200\d|201[0-7])\b)");
  if (std::regex_search(lower, kSince)) return true;
  return HasAny(lower, {"decade", "generation", "two years", "three years", "four years",
                        "five years", "ten years", "many years", "long history"});
}

std::string Verdict(bool v) { return v ? "TRUE" : "FALSE"; }

std::string Explain(bool v, std::string_view what) {
  return v ? "The text mentions " + std::string(what) + "."
           : "The text does not mention " + std::string(what) + ".";
}

std::string AnswerFeatures(std::string_view description) {
  const MockVerdicts v = MockRuleVerdicts(description);
  nlohmann::ordered_json j;
  j["Employee mentioned"] = Verdict(v.employees);
  j["employee explanation"] = Explain(v.employees, "employees");
  j["Rent mentioned"] = Verdict(v.rent);
  j["rent explanation"] = Explain(v.rent, "rent");
  j["Business longer than 2 years"] = Verdict(v.longer_2y);
  j["long history explanation"] = Explain(v.longer_2y, "a long operating history");
  j["New business"] = Verdict(v.new_business);
  j["new business explanation"] = Explain(v.new_business, "being a new business");
  j["Match grant mentioned"] = Verdict(v.match_grant);
  j["grant explanation"] = Explain(v.match_grant, "a matching grant");
  j["Gratitude expressed"] = Verdict(v.gratitude);
  j["gratitude explanation"] = Explain(v.gratitude, "gratitude to backers");
  j["Urgency explained"] = Verdict(v.urgency);
  j["urgency explanation"] = Explain(v.urgency, "an urgent need for funds");
  j["Social comparison (better than peers)"] = Verdict(v.social_better);
  j["social comparison better explanation"] = Explain(v.social_better, "outperforming peers");
  j["Self comparison (worse than before)"] = Verdict(v.self_worse);
  j["self comparison worse explanation"] = Explain(v.self_worse, "being worse than before");
  j["Tag"] = v.tag;
  j["Small Business Specified"] = Verdict(v.small_business_tag);
  j["Extrinsic incentive"] = Verdict(v.extrinsic);
  j["extrinsic incentive explanation"] = Explain(v.extrinsic, "a thank-you gift");
  return "```json\n" + j.dump(2) + "\n```";
}

std::string AnswerValidation(std::string_view description) {
  const std::string lower = AsciiLower(description);
  const bool business =
      HasAnyWord(lower, {"business", "shop", "store", "restaurant", "bakery", "cafe", "salon",
                         "studio", "company", "customers", "owner", "bar", "brewery", "gym"});
  nlohmann::ordered_json j;
  j["business"] = Verdict(business);
  j["business_explanation"] = business ? "The campaign raises money for a business."
                                       : "The campaign does not describe a business.";
  if (!business) {
    const bool owner = HasAnyWord(lower, {"employees", "employee", "staff"});
    j["owner_support"] = Verdict(owner);
    j["owner_support_explanation"] = Explain(owner, "support for employees");
  }
  return j.dump(2);
}

std::string JoinSentences(const std::vector<std::string>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out.push_back(' ');
    out += s;
  }
  return out;
}

std::string AnswerAugmentation(std::string_view original, bool break_prefix) {
  const std::string base = break_prefix ? std::string("Rewritten: ") + std::string(original)
                                        : std::string(original);
  std::vector<std::string> kept;
  for (const std::string& s : text::SplitSentences(original)) {
    if (!MockIsGratitudeSentence(s)) kept.push_back(s);
  }
  nlohmann::ordered_json j;
  j["correct_three"] = base + " " + std::string(kMockGratitudeSentences) + " " +
                       std::string(kMockMatchSentences) + " " +
                       std::string(kMockUrgencySentences);
  j["add_gratitude"] = base + " " + std::string(kMockGratitudeSentences);
  j["minus_gratitude"] = JoinSentences(kept);
  return j.dump(2);
}

std::string AnswerExtension(std::string_view prompt, std::string_view original) {
  static const std::regex kLength(R"(add about (\d+))");
  std::cmatch m;
  const std::string p(prompt);
  if (!std::regex_search(p.c_str(), m, kLength)) {
    throw ProviderError("mock: extension prompt without a target length");
  }
  const long target = std::stol(m[1].str());
  const long fillers = std::lround(static_cast<double>(target) / 10.0);
  const text::TokenizedText tokenized = text::Tokenize(original);
  if (tokenized.sentences.empty()) return std::string(original);
  // Splice the filler in after the first sentence so the rest of the text,
  // including characters the tokenizer skips, survives unchanged.
  const std::string_view first = tokenized.SentenceText(0);
  const std::size_t cut = static_cast<std::size_t>(first.data() - tokenized.raw.data()) + first.size();
  std::string out(original.substr(0, cut));
  for (long i = 0; i < fillers; ++i) {
    out += ' ';
    out += kFillerSentences[static_cast<std::size_t>(i) % std::size(kFillerSentences)];
  }
  out += original.substr(cut);
  return out;
}

}  // namespace

bool MockIsGratitudeSentence(std::string_view sentence) {
  const std::string lower = AsciiLower(sentence);
  return HasAny(lower, {"thank", "grateful", "gratitude", "appreciate"});
}

MockVerdicts MockRuleVerdicts(std::string_view description) {
  const std::string lower = AsciiLower(description);
  MockVerdicts v;
  v.employees = HasAnyWord(lower, {"employee", "employees", "staff", "workers", "team members"});
  v.rent = HasAnyWord(lower, {"rent", "lease"});
  v.longer_2y = MentionsLongHistory(lower);
  v.new_business = HasAny(lower, {"new business", "just opened", "recently opened",
                                  "newly opened", "grand opening", "opened last year"});
  v.match_grant = HasWord(lower, "match") &&
                  HasAny(lower, {"$500", "relief initiative", "gofundme", "grant"});
  v.gratitude = HasAny(lower, {"thank", "grateful", "gratitude", "appreciate"});
  v.urgency = HasAny(lower, {"urgent", "immediately", "as soon as possible", "desperate",
                             "right away", "immediate"});
  v.social_better = HasAny(lower, {"better than", "best in", "unlike any", "unlike other"});
  v.self_worse = HasAny(lower, {"used to", "than before", "declin", "dropped", "fewer customers"});
  static const std::regex kTag(R"(#([A-Za-z0-9_]+))");
  std::cmatch m;
  const std::string text(description);
  if (std::regex_search(text.c_str(), m, kTag)) {
    v.tag = m[0].str();
    v.small_business_tag = AsciiLower(v.tag).find("small") != std::string::npos;
  } else {
    v.tag = "NO TAG";
  }
  v.extrinsic = HasAny(lower, {"gift card", "thank-you gift", "thank you gift", "sticker",
                               "postcard", "free t-shirt"});
  return v;
}

std::string MockProvider::Complete(const CompletionRequest& request) {
  ++calls_;
  if (behavior_ == Behavior::kAlwaysFail) throw ProviderError("mock provider configured to fail");
  const std::string_view prompt = request.prompt;
  std::string text;
  if (!ExtractDelimitedText(prompt, text)) {
    throw ProviderError("mock: prompt has no triple-quoted text");
  }
  if (prompt.find(kExtensionMarker) != std::string_view::npos) {
    return AnswerExtension(prompt, text);
  }
  if (prompt.find(kAugmentMarker) != std::string_view::npos) {
    return AnswerAugmentation(text, behavior_ == Behavior::kBreakPrefix);
  }
  if (prompt.find(kFeatureMarker) != std::string_view::npos) return AnswerFeatures(text);
  if (prompt.find(kValidationMarker) != std::string_view::npos) return AnswerValidation(text);
  throw ProviderError("mock: unrecognized prompt");
}

}  // namespace crowdlift::llm
