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

#ifndef CROWDLIFT_PIPELINE_STUDY_H_
#define CROWDLIFT_PIPELINE_STUDY_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "crowdlift/common/error.h"
#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/context/acs.h"
#include "crowdlift/context/covid.h"
#include "crowdlift/corpus/campaign.h"
#include "crowdlift/gbdt/metrics.h"
#include "crowdlift/gbdt/model.h"
#include "crowdlift/gbdt/tune.h"
#include "crowdlift/llmfeat/client.h"
#include "crowdlift/pipeline/config.h"
#include "crowdlift/pipeline/counterfactual.h"
#include "crowdlift/pipeline/experiment.h"
#include "crowdlift/textfeat/resources.h"

namespace crowdlift::pipeline {

// File names inside the output directory.
namespace artifact {
inline constexpr std::string_view kRunState = "run_state.json";
inline constexpr std::string_view kCorpus = "corpus.jsonl";
inline constexpr std::string_view kIngestSummary = "ingest_summary.json";
inline constexpr std::string_view kFeatures = "features.csv";
inline constexpr std::string_view kModel = "model.json";
inline constexpr std::string_view kModelMeta = "model_meta.json";
inline constexpr std::string_view kPerformance = "table_s7_performance.csv";
inline constexpr std::string_view kLeaderboard = "tuning_leaderboard.csv";
inline constexpr std::string_view kFeatureImportance = "fig2_feature_importance.csv";
inline constexpr std::string_view kGroupImportance = "fig2_group_importance.csv";
inline constexpr std::string_view kAblation = "table_s8_ablation.csv";
inline constexpr std::string_view kLogit = "table_s10_logit.csv";
inline constexpr std::string_view kLogitFit = "table_s10_fit.csv";
inline constexpr std::string_view kAcsPca = "acs_pca.csv";
inline constexpr std::string_view kAcsPcaLoadings = "acs_pca_loadings.csv";
inline constexpr std::string_view kSimulationRows = "simulation_rows.jsonl";
inline constexpr std::string_view kSimulationSummary = "simulation_summary.json";
inline constexpr std::string_view kFig3 = "fig3_simulation.csv";
inline constexpr std::string_view kRobustness = "table_s11_robustness.csv";
inline constexpr std::string_view kHeterogeneity = "table_s12_heterogeneity.csv";
inline constexpr std::string_view kDesign = "experiment_design.json";
inline constexpr std::string_view kDraws = "experiment_draws.csv";
inline constexpr std::string_view kFig4 = "fig4_preferences.csv";
inline constexpr std::string_view kClogit = "table_s14_clogit.csv";
inline constexpr std::string_view kKs = "experiment_ks.csv";
inline constexpr std::string_view kAnalysis = "experiment_analysis.json";
inline constexpr std::string_view kManifest = "manifest.json";

// Every artifact the manifest reports on, in stage order.
const std::vector<std::string_view>& All();
}  // namespace artifact

struct IngestSummary {
  std::size_t records_in = 0;
  std::size_t blank_removed = 0;
  std::size_t outside_window = 0;
  std::size_t screened_out = 0;
  std::size_t records_out = 0;
  std::size_t funded = 0;
};

struct TrainSummary {
  gbdt::GbdtParams best;
  std::size_t train_rows = 0;
  std::size_t validation_rows = 0;
  std::size_t test_rows = 0;
  std::vector<gbdt::MetricsRow> metrics;
  std::vector<gbdt::LeaderboardEntry> leaderboard;
};

struct AblationRow {
  std::string feature_set;
  std::size_t num_features = 0;
  gbdt::EvalMetrics test;
};

// Column positions for the four ablation feature sets, in table order:
// non_textual, non_textual+lexicon, non_textual+gpt, all.
std::vector<std::pair<std::string, std::vector<std::size_t>>> AblationFeatureSets(
    const std::vector<FeatureColumn>& columns);

// Runs the study stages against one configuration. Each stage reads what it
// needs from the output directory and runs missing upstream stages first.
// Upstream artifacts are reused only when run_state.json records the same
// configuration hash. Failures surface as StageError carrying the stage name
// and the exit code of the underlying error.
class Study {
 public:
  explicit Study(StudyConfig config);
  // Uses `client` instead of building one from the config.
  Study(StudyConfig config, std::unique_ptr<llm::LlmClient> client);
  ~Study();

  const StudyConfig& config() const { return config_; }
  std::filesystem::path OutputPath(std::string_view name) const;

  IngestSummary Ingest();
  FeatureMatrix Features();
  TrainSummary Train();
  std::vector<AblationRow> Ablate();
  void Explain();
  SimulationReport Simulate();
  ExperimentDesign Design();
  // Empty `choices` falls back to the configured choices_path.
  ExperimentAnalysis AnalyzeExperiment(const std::filesystem::path& choices = {});
  // Writes manifest.json: every known artifact with its SHA-256, or "absent".
  nlohmann::ordered_json Report();
  // Every stage in order; analyze-experiment only when choices are
  // configured.
  nlohmann::ordered_json RunAll();

  llm::LlmClient& client();
  const text::TextResources& resources();
  const context::AcsTable& acs();
  const context::CovidSeries& covid();

 private:
  bool Fresh(std::string_view name) const;
  void WriteArtifact(std::string_view name, std::string_view contents) const;
  void WriteJson(std::string_view name, const nlohmann::ordered_json& j) const;
  void PrepareOutputDir() const;

  std::vector<corpus::CampaignRecord> LoadCorpus();
  FeatureMatrix LoadFeatures();
  gbdt::GbdtModel LoadModel();

  StudyConfig config_;
  std::string config_hash_;
  std::unique_ptr<llm::LlmClient> client_;
  std::unique_ptr<text::TextResources> resources_;
  std::unique_ptr<context::AcsTable> acs_;
  std::unique_ptr<context::CovidSeries> covid_;
};

}  // namespace crowdlift::pipeline

#endif  // CROWDLIFT_PIPELINE_STUDY_H_
