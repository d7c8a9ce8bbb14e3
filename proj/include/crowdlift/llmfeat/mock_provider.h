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

#ifndef CROWDLIFT_LLMFEAT_MOCK_PROVIDER_H_
#define CROWDLIFT_LLMFEAT_MOCK_PROVIDER_H_

#include <atomic>
#include <string>
#include <string_view>

#include "crowdlift/llmfeat/client.h"

namespace crowdlift::llm {

// Canned sentences the mock appends when augmenting.
inline constexpr std::string_view kMockGratitudeSentences =
    "Thank you so much for your kindness and generous support. We are deeply grateful to every "
    "backer who helps us.";
inline constexpr std::string_view kMockMatchSentences =
    "If we can raise $500, GoFundMe's Small Business Relief Initiative will match $500 for our "
    "business. That match would be a huge help to us.";
inline constexpr std::string_view kMockUrgencySentences =
    "Our need for funds is very urgent. Without immediate help we may have to close our doors "
    "within weeks.";

// Deterministic offline provider. Recognizes the four bundled prompts and
// answers them with keyword rules (feature flags, small-business check) or
// templates (augmentation, neutral extension).
class MockProvider : public LlmProvider {
 public:
  enum class Behavior {
    kNormal,
    // Every call throws ProviderError.
    kAlwaysFail,
    // Augmentation replies drop the original text (breaks the prefix rule).
    kBreakPrefix,
  };

  explicit MockProvider(Behavior behavior = Behavior::kNormal) : behavior_(behavior) {}

  std::string Complete(const CompletionRequest& request) override;
  std::string_view name() const override { return "mock"; }

  std::int64_t calls() const { return calls_.load(); }

 private:
  Behavior behavior_;
  std::atomic<std::int64_t> calls_{0};
};

// The keyword rules behind the mock's feature verdicts, exposed for tests.
struct MockVerdicts {
  bool employees = false;
  bool rent = false;
  bool longer_2y = false;
  bool new_business = false;
  bool match_grant = false;
  bool gratitude = false;
  bool urgency = false;
  bool social_better = false;
  bool self_worse = false;
  std::string tag;  // "NO TAG" when absent
  bool small_business_tag = false;
  bool extrinsic = false;
};

MockVerdicts MockRuleVerdicts(std::string_view description);

// True for a sentence the mock treats as expressing gratitude.
bool MockIsGratitudeSentence(std::string_view sentence);

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_MOCK_PROVIDER_H_
