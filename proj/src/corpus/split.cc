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

#include "crowdlift/corpus/split.h"

#include "crowdlift/common/error.h"

namespace crowdlift::corpus {

void SplitSpec::Validate() const {
  if (!(window_start < train_end && train_end < val_end && val_end < window_end)) {
    throw ValidationError("split dates must satisfy window_start < train_end < val_end < window_end");
  }
}

SplitSpec SplitSpec::FromJson(const nlohmann::json& j) {
  SplitSpec s;
  auto date = [&](const char* key, Date fallback) {
    return j.contains(key) ? Date::Parse(j[key].get<std::string>()) : fallback;
  };
  s.window_start = date("window_start", s.window_start);
  s.train_end = date("train_end", s.train_end);
  s.val_end = date("val_end", s.val_end);
  s.window_end = date("window_end", s.window_end);
  s.Validate();
  return s;
}

nlohmann::json SplitSpec::ToJson() const {
  return {{"window_start", window_start.ToString()},
          {"train_end", train_end.ToString()},
          {"val_end", val_end.ToString()},
          {"window_end", window_end.ToString()}};
}

const char* PartitionName(Partition p) {
  switch (p) {
    case Partition::kTrain:
      return "train";
    case Partition::kValidation:
      return "validation";
    case Partition::kTest:
      return "test";
  }
  return "?";
}

Partition AssignPartition(const Date& created, const SplitSpec& spec) {
  if (created < spec.window_start || spec.window_end < created) {
    throw ValidationError("campaign date " + created.ToString() + " outside observation window " +
                          spec.window_start.ToString() + ".." + spec.window_end.ToString());
  }
  if (created <= spec.train_end) return Partition::kTrain;
  if (created <= spec.val_end) return Partition::kValidation;
  return Partition::kTest;
}

Split SplitByDate(const std::vector<CampaignRecord>& records, const SplitSpec& spec) {
  spec.Validate();
  Split out;
  for (const auto& r : records) {
    if (!r.created_date) throw ValidationError("campaign " + r.id + " has no posting date");
    switch (AssignPartition(*r.created_date, spec)) {
      case Partition::kTrain:
        out.train.push_back(r);
        break;
      case Partition::kValidation:
        out.validation.push_back(r);
        break;
      case Partition::kTest:
        out.test.push_back(r);
        break;
    }
  }
  return out;
}

}  // namespace crowdlift::corpus
