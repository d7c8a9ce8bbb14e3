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

#ifndef CROWDLIFT_PIPELINE_EXPERIMENT_H_
#define CROWDLIFT_PIPELINE_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/pipeline/counterfactual.h"
#include "crowdlift/stats/agreement.h"
#include "crowdlift/stats/clogit.h"

namespace crowdlift::pipeline {

// Originals must be strictly longer than this (tokenizer words).
inline constexpr std::size_t kMinExperimentWords = 180;
inline constexpr int kStrataPerGroup = 4;
inline constexpr int kDrawsPerStratum = 2;

struct DesignCampaign {
  std::string id;
  bool funded = false;
  double lift = 0.0;
  std::string stratum;  // e.g. "funded_q1" (q1 = smallest lifts)
  std::string original;
  std::string augmented;
  std::string extended;
  std::size_t words_original = 0;
  std::size_t words_augmented = 0;
  std::size_t words_extended = 0;
};

// One seeded draw: which candidate positions were taken from a stratum.
struct StratumDraw {
  std::string stratum;
  std::uint64_t seed = 0;
  std::vector<std::string> candidates;  // sorted by lift, then id
  std::vector<std::size_t> drawn;       // positions into candidates, in draw order
};

struct ExperimentDesign {
  std::uint64_t seed = 0;
  std::size_t excluded_short = 0;  // originals with <= kMinExperimentWords words
  std::vector<DesignCampaign> campaigns;
  std::vector<StratumDraw> draws;
};

// Needs a correct_three simulation. Within the funded and the unfunded rows
// whose originals are long enough, ranks by lift (ties by id) and cuts four
// quartile strata, stratum = floor(4 * rank / m). Draws two per stratum with
// Rng(DeriveSeed(seed, stratum index)) and asks the LLM for a neutral
// extension matching the augmented length. Throws ValidationError naming
// any stratum with fewer than two candidates.
ExperimentDesign DesignExperiment(const SimulationReport& sim, llm::LlmClient& client,
                                  std::uint64_t seed);

nlohmann::ordered_json DesignToJson(const ExperimentDesign& design);
// stratum,seed,draw,position,id
std::string FormatDrawLogCsv(const ExperimentDesign& design);

enum class Variant { kOriginal, kAugmented, kExtended };
std::string_view VariantName(Variant v);
// Throws SchemaError on an unknown name.
Variant ParseVariant(std::string_view name);

struct ChoiceRecord {
  std::string participant;
  std::string campaign;
  Variant first = Variant::kOriginal;
  Variant second = Variant::kAugmented;
  Variant own_choice = Variant::kOriginal;
  Variant public_choice = Variant::kOriginal;
  // The instructional check at the start of the survey.
  bool attention_passed = true;
  // The campaign-specific recall question after this pair.
  bool recall_passed = true;
  bool donated_past_year = false;
  std::map<std::string, double> covariates;
};

// Throws SchemaError naming the field; the two variants must differ and each
// choice must be one of them.
ChoiceRecord ChoiceFromJson(const nlohmann::json& j);
nlohmann::ordered_json ChoiceToJson(const ChoiceRecord& r);
// One JSON object per line; errors carry the line number.
std::vector<ChoiceRecord> LoadChoices(const std::filesystem::path& path);

// The three pair types, each named by the variant expected to win first.
enum class Comparison { kAugmentedVsOriginal, kAugmentedVsExtended, kExtendedVsOriginal };
std::string_view ComparisonName(Comparison c);
Comparison ComparisonOf(const ChoiceRecord& r);

struct PreferenceShare {
  Comparison comparison = Comparison::kAugmentedVsOriginal;
  std::string question;  // "own" or "public"
  std::size_t n = 0;
  double share = 0.0;  // fraction choosing the first-named variant
  double se = 0.0;     // sqrt(share (1 - share) / n)
};

struct ClogitModel {
  std::string model;  // own, public, own_donors, public_donors
  std::size_t num_pairs = 0;
  std::optional<stats::ClogitFit> fit;
  std::optional<stats::WaldResult> wald;  // beta_augmented = beta_extended
  std::string skipped_reason;
};

struct KsCheck {
  std::string covariate;
  Comparison a = Comparison::kAugmentedVsOriginal;
  Comparison b = Comparison::kAugmentedVsExtended;
  stats::KsResult result;
};

struct ExperimentAnalysis {
  std::size_t records_in = 0;
  std::size_t participants_in = 0;
  std::size_t participants_failed_attention = 0;
  std::size_t records_failed_attention = 0;
  std::size_t records_failed_recall = 0;
  std::size_t records_used = 0;
  std::vector<PreferenceShare> shares;
  std::vector<ClogitModel> models;
  std::vector<KsCheck> ks;
};

// Attributes per alternative: (augmented, extended) indicators.
stats::ChoicePair ToChoicePair(const ChoiceRecord& r, bool public_question);

// Drops every record of a participant who failed the attention check and
// every record whose recall question failed, then estimates shares, the four
// conditional logits with their Wald tests, and KS randomization checks for
// each covariate across the three comparison types.
ExperimentAnalysis AnalyzeExperiment(const std::vector<ChoiceRecord>& records);

// comparison,question,n,share,se
std::string FormatPreferenceCsv(const ExperimentAnalysis& a);
// model,term,estimate,se,p_value,stars,contrast,contrast_se,num_pairs
std::string FormatClogitCsv(const ExperimentAnalysis& a);
// covariate,comparison_a,comparison_b,statistic,p_value
std::string FormatKsCsv(const ExperimentAnalysis& a);
nlohmann::ordered_json AnalysisToJson(const ExperimentAnalysis& a);

}  // namespace crowdlift::pipeline

#endif  // CROWDLIFT_PIPELINE_EXPERIMENT_H_
