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

#ifndef CROWDLIFT_LLMFEAT_PROMPTS_H_
#define CROWDLIFT_LLMFEAT_PROMPTS_H_

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

namespace crowdlift::llm {

enum class PromptId {
  kSmallBusinessValidation,
  kFeatureGeneration,
  kAugmentation,
  kExtension,
};

// Verbatim template text, compiled in from resources/prompts/*.txt.
std::string_view PromptTemplate(PromptId id);
// Resource file name, e.g. "feature_generation.v1.txt".
std::string_view PromptFileName(PromptId id);

// Replaces every `{{NAME}}` slot. Throws ValidationError if a slot in the
// template has no binding or a binding matches no slot.
std::string RenderPrompt(PromptId id,
                         std::initializer_list<std::pair<std::string_view, std::string_view>> slots);

// Text between the first pair of triple quotes, or nullopt-like empty flag.
bool ExtractDelimitedText(std::string_view prompt, std::string& out);

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_PROMPTS_H_
