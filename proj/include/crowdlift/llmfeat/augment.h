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

#ifndef CROWDLIFT_LLMFEAT_AUGMENT_H_
#define CROWDLIFT_LLMFEAT_AUGMENT_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "crowdlift/common/error.h"
#include "crowdlift/llmfeat/client.h"

namespace crowdlift::llm {

// An LLM rewrite broke one of its output conditions. Carries the raw reply.
class RewriteViolationError : public ValidationError {
 public:
  enum class Kind { kPrefix, kBoundarySentence, kLengthTolerance };

  RewriteViolationError(Kind kind, const std::string& message, std::string raw_output)
      : ValidationError(message), kind_(kind), raw_output_(std::move(raw_output)) {}

  Kind kind() const { return kind_; }
  const std::string& raw_output() const { return raw_output_; }

 private:
  Kind kind_;
  std::string raw_output_;
};

struct AugmentationResult {
  std::string correct_three;
  std::string add_gratitude;
  std::string minus_gratitude;
};

// Parses the three-field reply. Throws SchemaError on a missing field.
AugmentationResult ParseAugmentationReply(std::string_view reply);

// Sends the augmentation prompt. correct_three and add_gratitude must start
// with the original text verbatim; on a violation the request is repeated
// once (bypassing the cache) and a second violation throws
// RewriteViolationError of kind kPrefix.
AugmentationResult AugmentThree(std::string_view description, LlmClient& client);

// Relative tolerance on the number of added words.
inline constexpr double kExtensionTolerance = 0.25;

// Asks for about `target_added_words` neutral words. The reply must keep the
// original first and last sentences and add target +/- 25% words (counted
// with the text tokenizer). One retry, then RewriteViolationError. Throws
// ValidationError when the description has fewer than two sentences.
std::string ExtendNeutral(std::string_view description, std::size_t target_added_words,
                          LlmClient& client);

// The checks ExtendNeutral applies; throws RewriteViolationError.
void CheckExtension(std::string_view original, std::string_view extended,
                    std::size_t target_added_words);

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_AUGMENT_H_
