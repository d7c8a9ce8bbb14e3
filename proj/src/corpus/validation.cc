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

#include "crowdlift/corpus/validation.h"

#include "crowdlift/common/parallel.h"

namespace crowdlift::corpus {

ValidationVerdict ValidateSmallBusiness(const CampaignRecord& record, llm::LlmClient& client) {
  return llm::ValidateSmallBusiness(record.description, client);
}

ScreenResult ScreenSmallBusinesses(const std::vector<CampaignRecord>& records,
                                   llm::LlmClient& client, int workers) {
  ScreenResult out;
  out.verdicts = OrderedParallelMap<ValidationVerdict>(
      records.size(), workers,
      [&](std::size_t i) { return ValidateSmallBusiness(records[i], client); });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (out.verdicts[i].Eligible()) out.kept.push_back(records[i]);
  }
  return out;
}

}  // namespace crowdlift::corpus
