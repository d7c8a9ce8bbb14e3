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

#ifndef CROWDLIFT_PIPELINE_COUNTERFACTUAL_H_
#define CROWDLIFT_PIPELINE_COUNTERFACTUAL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/corpus/campaign.h"
#include "crowdlift/gbdt/model.h"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/pipeline/config.h"
#include "crowdlift/stats/regression.h"
#include "crowdlift/textfeat/resources.h"

namespace crowdlift::pipeline {

// Tokenizer word count, the length measure used throughout the simulation.
std::size_t WordCount(std::string_view text);

// Row ids (matrix order) a mode may rewrite. kCorrectThree needs
// gratitude_expressed, match_grant_mentioned and urgency_explained all 0,
// kAddGratitude needs gratitude_expressed 0 and kMinusGratitude needs it 1.
std::vector<std::string> EligibleForSimulation(const FeatureMatrix& matrix, AugmentMode mode);

// Uniform draw of `n` eligible ids without replacement, returned in matrix
// order. Throws ValidationError when fewer than `n` are eligible or n == 0.
std::vector<std::string> SelectSimulationSample(const FeatureMatrix& matrix, std::size_t n,
                                                std::uint64_t seed,
                                                AugmentMode mode = AugmentMode::kCorrectThree);

// The row scored for a rewrite: the 116 textual values of `augmented_text`
// followed by the untouched non-textual tail of `original_row`.
std::vector<double> CounterfactualRow(std::span<const double> original_row,
                                      std::string_view augmented_text,
                                      const text::TextResources& resources, llm::LlmClient& client);

struct SimulationRow {
  std::string id;
  bool funded = false;
  double before = 0.0;
  double after = 0.0;
  double lift = 0.0;  // after - before
  std::size_t words_before = 0;
  std::size_t words_after = 0;
  std::string original_text;
  std::string augmented_text;
};

nlohmann::ordered_json SimulationRowToJson(const SimulationRow& row);
SimulationRow SimulationRowFromJson(const nlohmann::json& j);

struct SimulationAggregate {
  std::size_t n = 0;
  double mean_before = 0.0;
  double mean_after = 0.0;
  double sd_before = 0.0;  // sample standard deviation, 0 when n < 2
  double sd_after = 0.0;
  double mean_lift = 0.0;
  double share_improved = 0.0;  // fraction of rows with lift > 0
};

// Recomputes the aggregate from rows; selection by funded status when
// `funded` is set.
SimulationAggregate Aggregate(const std::vector<SimulationRow>& rows,
                              std::optional<bool> funded = std::nullopt);

// One OLS model, or the reason it was not estimated.
struct RegressionTable {
  std::string model;
  std::optional<stats::OlsFit> fit;
  std::string skipped_reason;
};

struct SimulationReport {
  AugmentMode mode = AugmentMode::kCorrectThree;
  std::vector<SimulationRow> rows;
  std::vector<std::string> excluded_ids;  // rewrite-rule violations
  SimulationAggregate all;
  SimulationAggregate funded;
  SimulationAggregate unfunded;
  // Predicted probability on the augmentation flag and z-scored word count
  // over stacked original and augmented rows: all, funded, unfunded.
  std::vector<RegressionTable> robustness;
  // Lift on the z-scored bachelor's-degree share, then adding the
  // configuration features.
  std::vector<RegressionTable> heterogeneity;
};

// Rewrites each sampled description, re-extracts the 116 textual columns of
// the rewrite, keeps the 52 non-textual columns of the original row, and
// scores both rows. `matrix` must use the canonical column layout and hold
// every sampled id; `records` supplies descriptions and outcomes. Rows whose
// rewrite breaks the prefix rule are dropped and listed in excluded_ids.
SimulationReport RunCounterfactual(const std::vector<std::string>& sample,
                                   const std::vector<corpus::CampaignRecord>& records,
                                   const FeatureMatrix& matrix, const gbdt::GbdtModel& model,
                                   llm::LlmClient& client, const text::TextResources& resources,
                                   AugmentMode mode, int workers);

// Fills the aggregates and regression tables of `report` from its rows.
// `matrix` supplies pct_bachelors and the configuration columns.
void SummarizeSimulation(SimulationReport& report, const FeatureMatrix& matrix);

// Long-format tables: model,term,estimate,se,p_value,stars,num_obs. Skipped
// models appear as one row with term "skipped".
std::string FormatRegressionTablesCsv(const std::vector<RegressionTable>& tables);
// group,n,mean_before,sd_before,mean_after,sd_after,mean_lift,share_improved
std::string FormatSimulationSummaryCsv(const SimulationReport& report);

}  // namespace crowdlift::pipeline

#endif  // CROWDLIFT_PIPELINE_COUNTERFACTUAL_H_
