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

#include "crowdlift/llmfeat/prompts.h"

#include <set>

#include "crowdlift/common/error.h"
#include "prompt_data.h"

namespace crowdlift::llm {

std::string_view PromptTemplate(PromptId id) {
  switch (id) {
    case PromptId::kSmallBusinessValidation: return prompt_data::kSmallBusinessValidation;
    case PromptId::kFeatureGeneration: return prompt_data::kFeatureGeneration;
    case PromptId::kAugmentation: return prompt_data::kAugmentation;
    case PromptId::kExtension: return prompt_data::kExtension;
  }
  throw Error("unknown prompt id");
}

std::string_view PromptFileName(PromptId id) {
  switch (id) {
    case PromptId::kSmallBusinessValidation: return "small_business_validation.v1.txt";
    case PromptId::kFeatureGeneration: return "feature_generation.v1.txt";
    case PromptId::kAugmentation: return "augmentation.v1.txt";
    case PromptId::kExtension: return "extension.v1.txt";
  }
  throw Error("unknown prompt id");
}

std::string RenderPrompt(
    PromptId id, std::initializer_list<std::pair<std::string_view, std::string_view>> slots) {
  const std::string_view tmpl = PromptTemplate(id);
  std::string out;
  std::set<std::string_view> used;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    const std::size_t close = tmpl.find("}}", open);
    if (close == std::string_view::npos) throw Error("unterminated prompt slot");
    out.append(tmpl.substr(pos, open - pos));
    const std::string_view name = tmpl.substr(open + 2, close - open - 2);
    bool bound = false;
    for (const auto& [slot, value] : slots) {
      if (slot == name) {
        out.append(value);
        used.insert(slot);
        bound = true;
        break;
      }
    }
    if (!bound) throw ValidationError("prompt slot {{" + std::string(name) + "}} is unbound");
    pos = close + 2;
  }
  for (const auto& [slot, value] : slots) {
    if (!used.count(slot)) {
      throw ValidationError("prompt has no slot named {{" + std::string(slot) + "}}");
    }
  }
  return out;
}

bool ExtractDelimitedText(std::string_view prompt, std::string& out) {
  const std::size_t open = prompt.find("\"\"\"");
  if (open == std::string_view::npos) return false;
  const std::size_t close = prompt.find("\"\"\"", open + 3);
  if (close == std::string_view::npos) return false;
  out.assign(prompt.substr(open + 3, close - open - 3));
  return true;
}

}  // namespace crowdlift::llm
