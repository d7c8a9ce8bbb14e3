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

#ifndef CROWDLIFT_CORPUS_SPLIT_H_
#define CROWDLIFT_CORPUS_SPLIT_H_

#include <vector>

#include "nlohmann/json.hpp"

#include "crowdlift/common/date.h"
#include "crowdlift/corpus/campaign.h"

namespace crowdlift::corpus {

struct SplitSpec {
  Date window_start{2020, 1, 22};
  Date train_end{2020, 3, 31};
  Date val_end{2020, 4, 30};
  Date window_end{2020, 12, 31};

  // Throws ValidationError unless window_start < train_end < val_end < window_end.
  void Validate() const;
  static SplitSpec FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

enum class Partition { kTrain, kValidation, kTest };

const char* PartitionName(Partition p);

// Throws ValidationError for a date outside the observation window.
Partition AssignPartition(const Date& created, const SplitSpec& spec);

struct Split {
  std::vector<CampaignRecord> train;
  std::vector<CampaignRecord> validation;
  std::vector<CampaignRecord> test;
};

// Input order is preserved within each partition.
Split SplitByDate(const std::vector<CampaignRecord>& records, const SplitSpec& spec);

}  // namespace crowdlift::corpus

#endif  // CROWDLIFT_CORPUS_SPLIT_H_
