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

#ifndef CROWDLIFT_SERVICE_SERVICE_H_
#define CROWDLIFT_SERVICE_SERVICE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "crowdlift/common/date.h"
#include "crowdlift/context/acs.h"
#include "crowdlift/context/covid.h"
#include "crowdlift/corpus/campaign.h"
#include "crowdlift/gbdt/model.h"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/textfeat/resources.h"

namespace crowdlift::service {

struct DraftRequest {
  std::string description;
  double goal_amount = 0.0;
  bool organizer_male = false;
  bool has_beneficiary = false;
  bool gofundme_organized = false;
  std::string city;
  std::string state;
  std::optional<Date> created_date;  // today when absent

  // Throws ValidationError on a missing or mistyped field, an empty
  // description or a non-positive goal.
  static DraftRequest FromJson(const nlohmann::json& j);
  corpus::CampaignRecord ToRecord() const;
};

struct Diagnosis {
  double probability = 0.0;
  // Exactly gratitude_expressed, urgency_explained, match_grant_mentioned.
  std::map<std::string, bool> checklist;
  std::vector<gbdt::FeatureImportance> top_features;
  double word_count = 0.0;
  double fk_grade = 0.0;
  bool contains_spam = false;

  nlohmann::ordered_json ToJson() const;
};

struct ServiceConfig {
  std::filesystem::path model_path;
  // Optional training metadata written next to the model.
  std::filesystem::path model_meta_path;
  std::filesystem::path resources_dir;
  std::filesystem::path acs_path;
  std::filesystem::path covid_path;
  std::size_t top_features = 10;
};

// Everything a request reads. Built once per (re)load and never mutated, so
// a request keeps a consistent view while a reload swaps in a new one.
struct Snapshot {
  std::shared_ptr<const gbdt::GbdtModel> model;  // null when loading failed
  nlohmann::json model_meta;
  std::vector<gbdt::FeatureImportance> importance;  // all features, share descending
  std::optional<text::TextResources> resources;
  context::AcsTable acs;
  context::CovidSeries covid;
  // Per artifact: "ok" or the load error.
  std::map<std::string, std::string> status;

  bool ready() const { return model != nullptr && resources.has_value(); }
  // Loading never throws; failures are recorded in `status`.
  static std::shared_ptr<const Snapshot> Load(const ServiceConfig& config);
};

struct Response {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Seconds suggested to clients after a provider failure.
inline constexpr int kRetryAfterSeconds = 30;

// HTTP-independent request handling. Errors use the envelope
// {"code", "message", "detail"}.
class ScoringService {
 public:
  ScoringService(ServiceConfig config, std::unique_ptr<llm::LlmClient> client);

  // Builds a new snapshot and swaps it in. Requests already running keep the
  // snapshot they started with.
  void Reload();
  std::shared_ptr<const Snapshot> snapshot() const;

  // Scores a draft against a snapshot; the row is the canonical 168-value
  // layout with missing context cells where the tables have no coverage.
  Diagnosis Diagnose(const DraftRequest& draft, const Snapshot& snap,
                     std::vector<double>* row = nullptr);

  Response Score(std::string_view body);
  Response Augment(std::string_view body);
  Response ModelInfo() const;
  Response Healthz() const;

  static Response ErrorResponse(int status, std::string_view code, std::string_view message,
                                const nlohmann::json& detail = nlohmann::json::object());

 private:
  ServiceConfig config_;
  std::unique_ptr<llm::LlmClient> client_;
  mutable std::mutex mu_;
  std::shared_ptr<const Snapshot> snapshot_;
};

}  // namespace crowdlift::service

#endif  // CROWDLIFT_SERVICE_SERVICE_H_
