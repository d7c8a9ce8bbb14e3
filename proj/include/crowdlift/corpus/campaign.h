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

#ifndef CROWDLIFT_CORPUS_CAMPAIGN_H_
#define CROWDLIFT_CORPUS_CAMPAIGN_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"

#include "crowdlift/common/date.h"

namespace crowdlift::corpus {

struct Donation {
  std::string timestamp;
  double amount = 0;

  friend bool operator==(const Donation&, const Donation&) = default;
};

struct CampaignRecord {
  std::string id;
  std::string title;
  std::string description;
  // Absent dates and empty location fields survive loading so that
  // FilterBlank can count and drop them.
  std::optional<Date> created_date;
  std::string city;
  std::string state;
  std::optional<std::string> county;
  double goal_amount = 0;
  bool organizer_male = false;
  bool has_beneficiary = false;
  bool gofundme_organized = false;
  std::vector<Donation> donations;
  bool funded = false;

  friend bool operator==(const CampaignRecord&, const CampaignRecord&) = default;
};

// Outcome label: any financial support at all.
inline bool DeriveFunded(const std::vector<Donation>& donations) { return !donations.empty(); }

// Converts one JSON object. Throws SchemaError naming the offending field.
CampaignRecord CampaignFromJson(const nlohmann::json& j);
nlohmann::ordered_json CampaignToJson(const CampaignRecord& r);

enum class InputFormat { kJsonLines, kCsv };

// Reads campaigns and derives `funded`. Errors name the line number and field;
// duplicate ids are rejected. For CSV the donations come from a companion
// file (id,timestamp,amount); by default "<stem>.donations.csv" next to the
// input, and no companion means no donations.
std::vector<CampaignRecord> LoadCampaigns(const std::filesystem::path& path, InputFormat format,
                                          const std::filesystem::path& donations_path = {});

// Canonical JSON-lines, one campaign per line.
void WriteCampaigns(const std::filesystem::path& path, const std::vector<CampaignRecord>& records);

struct FilterResult {
  std::vector<CampaignRecord> kept;
  std::size_t removed = 0;
};

// Drops records missing a description, city/state, or posting date.
FilterResult FilterBlank(std::vector<CampaignRecord> records);

}  // namespace crowdlift::corpus

#endif  // CROWDLIFT_CORPUS_CAMPAIGN_H_
