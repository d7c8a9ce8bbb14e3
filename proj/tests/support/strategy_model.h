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

#ifndef CROWDLIFT_TESTS_SUPPORT_STRATEGY_MODEL_H_
#define CROWDLIFT_TESTS_SUPPORT_STRATEGY_MODEL_H_

#include <string>
#include <vector>

#include "crowdlift/context/assemble.h"
#include "crowdlift/gbdt/model.h"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/llmfeat/mock_provider.h"
#include "crowdlift/llmfeat/prompts.h"

namespace crowdlift::testing {

// Hand-built model on the canonical layout with margin
// -1 + 0.5 gratitude + 0.5 urgency + 0.5 match, so a draft gaining all three
// strategies moves from sigmoid(-1) to sigmoid(0.5).
inline gbdt::GbdtModel MakeStrategyModel() {
  const auto& columns = context::CanonicalColumns();
  gbdt::GbdtModel model(columns, std::vector<gbdt::FeatureBins>(columns.size()), -1.0, {});
  for (const char* flag : {"gratitude_expressed", "urgency_explained", "match_grant_mentioned"}) {
    int index = -1;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].name == flag) index = static_cast<int>(c);
    }
    gbdt::Tree tree;
    gbdt::TreeNode root;
    root.feature = index;
    root.threshold = 0.5;
    root.left = 1;
    root.right = 2;
    root.gain = 1.0;
    gbdt::TreeNode off;
    off.value = 0.0;
    gbdt::TreeNode on;
    on.value = 0.5;
    tree.nodes = {root, off, on};
    model.AddTree(tree);
  }
  return model;
}

// Mock provider whose augmentation reply returns the original text in all
// three fields; every other prompt goes to the regular mock.
class PassThroughProvider : public llm::LlmProvider {
 public:
  std::string Complete(const llm::CompletionRequest& request) override {
    if (request.prompt.find("correct_three") != std::string::npos) {
      std::string text;
      llm::ExtractDelimitedText(request.prompt, text);
      nlohmann::json reply = {
          {"correct_three", text}, {"add_gratitude", text}, {"minus_gratitude", text}};
      return reply.dump();
    }
    return inner_.Complete(request);
  }
  std::string_view name() const override { return "pass-through"; }

 private:
  llm::MockProvider inner_;
};

inline std::unique_ptr<llm::LlmClient> MakeClient(std::unique_ptr<llm::LlmProvider> provider) {
  llm::LlmClientConfig config;
  config.initial_backoff = std::chrono::milliseconds(1);
  return std::make_unique<llm::LlmClient>(config, std::move(provider));
}

inline std::unique_ptr<llm::LlmClient> MakeMockClient(
    llm::MockProvider::Behavior behavior = llm::MockProvider::Behavior::kNormal) {
  return MakeClient(std::make_unique<llm::MockProvider>(behavior));
}

// A plain description with none of the three strategies, long enough for
// the experiment word floor when `sentences` is large.
inline std::string PlainDescription(int sentences, int variant = 0) {
  static const char* kFiller[] = {
      "Our bakery has served the corner of Elm Street for many years.",
      "We bake bread every morning and sell pastries to neighbors on their way to work.",
      "The shop has six small tables and a window that faces the park.",
      "Local artists hang their paintings on our walls each month.",
      "Sales have dropped since the spring and the dining room is closed.",
      "The money raised will pay for flour, utilities, and insurance.",
      "Our family runs the ovens and the register together.",
      "On weekends we host small events for families in the area.",
  };
  std::string out;
  for (int i = 0; i < sentences; ++i) {
    if (!out.empty()) out += ' ';
    out += kFiller[(i + variant) % 8];
  }
  return out;
}

}  // namespace crowdlift::testing

#endif  // CROWDLIFT_TESTS_SUPPORT_STRATEGY_MODEL_H_
