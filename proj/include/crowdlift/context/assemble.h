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

#ifndef CROWDLIFT_CONTEXT_ASSEMBLE_H_
#define CROWDLIFT_CONTEXT_ASSEMBLE_H_

#include <optional>
#include <string>
#include <vector>

#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/context/acs.h"
#include "crowdlift/context/covid.h"
#include "crowdlift/corpus/campaign.h"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/textfeat/resources.h"

namespace crowdlift::context {

inline constexpr std::size_t kTextualFeatureCount = 116;
inline constexpr std::size_t kConfigurationFeatureCount = 4;
inline constexpr std::size_t kPandemicFeatureCount = 2;
inline constexpr std::size_t kTotalFeatureCount = 168;

// The frozen 168-column layout: 105 lexicon, 11 GPT flags, goal_amount,
// organizer_male, has_beneficiary, gofundme_organized, covid_cases_7d,
// covid_share_of_us, then the 46 demographic columns.
const std::vector<FeatureColumn>& CanonicalColumns();

// The 116 textual values for one description (lexicon then GPT flags 0/1).
std::vector<double> TextualFeatures(const std::string& description,
                                    const text::TextResources& resources, llm::LlmClient& client);

// How an uncovered pandemic window is handled: kStrict raises the
// ValidationError from CovidSeries::Shock, kLenient leaves both pandemic
// cells missing.
enum class Coverage { kStrict, kLenient };

// The 52 non-textual values for one campaign, in canonical order.
std::vector<double> NonTextualFeatures(const corpus::CampaignRecord& record, const AcsTable& acs,
                                       const CovidSeries& covid,
                                       Coverage coverage = Coverage::kStrict);

// One full 168-value row: textual values of the description, then the
// non-textual values.
std::vector<double> AssembleRow(const corpus::CampaignRecord& record,
                                const text::TextResources& resources, llm::LlmClient& client,
                                const AcsTable& acs, const CovidSeries& covid,
                                Coverage coverage = Coverage::kStrict);

// One row per record in input order, assembled by up to `workers` threads.
// An extraction failure is rethrown with the campaign id in the message,
// keeping its error category.
FeatureMatrix AssembleFeatureMatrix(const std::vector<corpus::CampaignRecord>& records,
                                    const text::TextResources& resources, llm::LlmClient& client,
                                    const AcsTable& acs, const CovidSeries& covid, int workers);

}  // namespace crowdlift::context

#endif  // CROWDLIFT_CONTEXT_ASSEMBLE_H_
