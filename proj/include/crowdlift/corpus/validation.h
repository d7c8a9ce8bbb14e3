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

#ifndef CROWDLIFT_CORPUS_VALIDATION_H_
#define CROWDLIFT_CORPUS_VALIDATION_H_

#include <vector>

#include "crowdlift/corpus/campaign.h"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/llmfeat/gpt_features.h"

namespace crowdlift::corpus {

using ValidationVerdict = llm::SmallBusinessVerdict;

ValidationVerdict ValidateSmallBusiness(const CampaignRecord& record, llm::LlmClient& client);

struct ScreenResult {
  std::vector<CampaignRecord> kept;
  std::vector<ValidationVerdict> verdicts;  // aligned with the input
};

// Validates every record (up to `workers` at a time, results in input order)
// and keeps the eligible ones.
ScreenResult ScreenSmallBusinesses(const std::vector<CampaignRecord>& records,
                                   llm::LlmClient& client, int workers);

}  // namespace crowdlift::corpus

#endif  // CROWDLIFT_CORPUS_VALIDATION_H_
