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

#include "crowdlift/pipeline/study.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crowdlift/common/hash.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/context/assemble.h"
#include "crowdlift/corpus/split.h"
#include "crowdlift/corpus/validation.h"
#include "crowdlift/gbdt/train.h"
#include "crowdlift/llmfeat/gpt_features.h"
#include "crowdlift/pipeline/explain.h"

namespace crowdlift::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Stream labels for DeriveSeed, one per stochastic step outside training.
constexpr std::uint64_t kBaselineStream = 303;
constexpr std::uint64_t kSimulationStream = 101;
constexpr std::uint64_t kDesignStream = 202;

template <typename F>
auto RunStage(std::string_view stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(std::string(stage), e.what(), ExitCodeFor(e));
  }
}

std::vector<int> Labels(const std::vector<corpus::CampaignRecord>& records) {
  std::vector<int> y;
  y.reserve(records.size());
  for (const auto& r : records) y.push_back(r.funded ? 1 : 0);
  return y;
}

std::vector<int> Pick(const std::vector<int>& y, const std::vector<std::size_t>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(y[r]);
  return out;
}

// Row positions of each date partition.
struct PartitionRows {
  std::vector<std::size_t> train, validation, test;
};

PartitionRows PartitionByDate(const std::vector<corpus::CampaignRecord>& records,
                              const corpus::SplitSpec& spec) {
  spec.Validate();
  PartitionRows p;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].created_date) throw ValidationError("campaign " + records[i].id + " has no date");
    switch (corpus::AssignPartition(*records[i].created_date, spec)) {
      case corpus::Partition::kTrain:
        p.train.push_back(i);
        break;
      case corpus::Partition::kValidation:
        p.validation.push_back(i);
        break;
      case corpus::Partition::kTest:
        p.test.push_back(i);
        break;
    }
  }
  for (const auto& [name, rows] : {std::pair{"training", &p.train},
                                   std::pair{"validation", &p.validation},
                                   std::pair{"test", &p.test}}) {
    if (rows->empty()) {
      throw StageError("split", std::string("the ") + name + " partition is empty (" +
                                    std::to_string(records.size()) + " campaigns in the corpus)",
                       2);
    }
  }
  return p;
}

std::string FormatImportanceCsv(const std::vector<gbdt::FeatureImportance>& importance,
                                const std::vector<FeatureColumn>& columns) {
  std::vector<std::size_t> order(importance.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance[a].share > importance[b].share;
  });
  std::ostringstream out;
  out << "feature,group,share\n";
  for (std::size_t i : order) {
    out << importance[i].feature << ',' << FeatureGroupName(columns[i].group) << ','
        << FormatFixed(importance[i].share, 8) << '\n';
  }
  return out.str();
}

ordered_json MetricsJson(const gbdt::EvalMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"accuracy", m.accuracy}};
}

}  // namespace

namespace artifact {
const std::vector<std::string_view>& All() {
  static const std::vector<std::string_view> all = {
      kRunState,       kCorpus,         kIngestSummary,     kFeatures,        kModel,
      kModelMeta,      kPerformance,    kLeaderboard,       kFeatureImportance,
      kGroupImportance, kAblation,      kLogit,             kLogitFit,        kAcsPca,
      kAcsPcaLoadings, kSimulationRows, kSimulationSummary, kFig3,            kRobustness,
      kHeterogeneity,  kDesign,         kDraws,             kFig4,            kClogit,
      kKs,             kAnalysis};
  return all;
}
}  // namespace artifact

std::vector<std::pair<std::string, std::vector<std::size_t>>> AblationFeatureSets(
    const std::vector<FeatureColumn>& columns) {
  std::vector<std::size_t> non_textual, lexicon, gpt;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].group != FeatureGroup::kTextual) {
      non_textual.push_back(c);
      continue;
    }
    bool is_gpt = false;
    for (llm::GptFlag f : llm::AllGptFlags()) is_gpt = is_gpt || llm::GptFlagName(f) == columns[c].name;
    (is_gpt ? gpt : lexicon).push_back(c);
  }
  auto merge = [](std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  };
  std::vector<std::size_t> all(columns.size());
  for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
  return {{"non_textual", non_textual},
          {"non_textual+lexicon", merge(non_textual, lexicon)},
          {"non_textual+gpt", merge(non_textual, gpt)},
          {"all", all}};
}

Study::Study(StudyConfig config) : Study(std::move(config), nullptr) {}

Study::Study(StudyConfig config, std::unique_ptr<llm::LlmClient> client)
    : config_(std::move(config)), config_hash_(config_.Hash()), client_(std::move(client)) {}

Study::~Study() = default;

fs::path Study::OutputPath(std::string_view name) const { return config_.output_dir / name; }

llm::LlmClient& Study::client() {
  if (!client_) client_ = llm::LlmClient::Create(config_.llm);
  return *client_;
}

const text::TextResources& Study::resources() {
  if (!resources_) {
    resources_ = std::make_unique<text::TextResources>(
        text::TextResources::LoadFromDirectory(config_.resources_dir));
  }
  return *resources_;
}

const context::AcsTable& Study::acs() {
  if (!acs_) acs_ = std::make_unique<context::AcsTable>(context::AcsTable::Load(config_.acs_path));
  return *acs_;
}

const context::CovidSeries& Study::covid() {
  if (!covid_) {
    covid_ = std::make_unique<context::CovidSeries>(context::CovidSeries::Load(config_.covid_path));
  }
  return *covid_;
}

void Study::PrepareOutputDir() const {
  std::error_code ec;
  fs::create_directories(config_.output_dir, ec);
  if (ec || !fs::is_directory(config_.output_dir)) {
    throw IoError("cannot create output directory " + config_.output_dir.string() + ": " +
                  ec.message());
  }
}

bool Study::Fresh(std::string_view name) const {
  if (!fs::exists(OutputPath(name))) return false;
  try {
    const auto state = nlohmann::json::parse(ReadFileToString(OutputPath(artifact::kRunState).string()));
    return state.value("config_hash", std::string()) == config_hash_;
  } catch (const std::exception&) {
    return false;
  }
}

void Study::WriteArtifact(std::string_view name, std::string_view contents) const {
  WriteStringToFile(OutputPath(name).string(), contents);
}

void Study::WriteJson(std::string_view name, const ordered_json& j) const {
  WriteArtifact(name, j.dump(2) + "\n");
}

std::vector<corpus::CampaignRecord> Study::LoadCorpus() {
  if (!Fresh(artifact::kCorpus)) Ingest();
  return corpus::LoadCampaigns(OutputPath(artifact::kCorpus), corpus::InputFormat::kJsonLines);
}

FeatureMatrix Study::LoadFeatures() {
  if (!Fresh(artifact::kFeatures)) return Features();
  return FeatureMatrix::ReadCsv(OutputPath(artifact::kFeatures));
}

gbdt::GbdtModel Study::LoadModel() {
  if (!Fresh(artifact::kModel)) Train();
  return gbdt::GbdtModel::Load(OutputPath(artifact::kModel));
}

IngestSummary Study::Ingest() {
  return RunStage("ingest", [&] {
    PrepareOutputDir();
    // Everything downstream was built from the previous corpus.
    for (std::string_view name : artifact::All()) {
      std::error_code ec;
      fs::remove(OutputPath(name), ec);
    }
    fs::remove(OutputPath(artifact::kManifest));

    IngestSummary s;
    auto records = corpus::LoadCampaigns(config_.corpus_path, config_.corpus_format,
                                         config_.donations_path);
    s.records_in = records.size();
    auto filtered = corpus::FilterBlank(std::move(records));
    s.blank_removed = filtered.removed;
    std::vector<corpus::CampaignRecord> kept;
    for (auto& r : filtered.kept) {
      const Date& d = *r.created_date;
      if (d < config_.split.window_start || d > config_.split.window_end) {
        ++s.outside_window;
        continue;
      }
      kept.push_back(std::move(r));
    }
    if (config_.screen_small_business) {
      auto screened = corpus::ScreenSmallBusinesses(kept, client(), config_.workers);
      s.screened_out = kept.size() - screened.kept.size();
      kept = std::move(screened.kept);
    }
    s.records_out = kept.size();
    s.funded = static_cast<std::size_t>(
        std::count_if(kept.begin(), kept.end(), [](const auto& r) { return r.funded; }));
    corpus::WriteCampaigns(OutputPath(artifact::kCorpus), kept);

    ordered_json summary;
    summary["records_in"] = s.records_in;
    summary["blank_removed"] = s.blank_removed;
    summary["outside_window"] = s.outside_window;
    summary["screened_out"] = s.screened_out;
    summary["records_out"] = s.records_out;
    summary["funded"] = s.funded;
    WriteJson(artifact::kIngestSummary, summary);
    ordered_json state;
    state["config_hash"] = config_hash_;
    // Same fields as the hash, so the bundle does not depend on where it
    // was written or how many threads produced it.
    ordered_json recorded = config_.ToJson();
    recorded.erase("workers");
    recorded.erase("output_dir");
    state["config"] = std::move(recorded);
    WriteJson(artifact::kRunState, state);
    return s;
  });
}

FeatureMatrix Study::Features() {
  auto records = LoadCorpus();
  return RunStage("features", [&] {
    FeatureMatrix m = context::AssembleFeatureMatrix(records, resources(), client(), acs(), covid(),
                                                     config_.workers);
    m.WriteCsv(OutputPath(artifact::kFeatures));
    return m;
  });
}

TrainSummary Study::Train() {
  auto records = LoadCorpus();
  FeatureMatrix matrix = LoadFeatures();
  return RunStage("train", [&] {
    if (matrix.row_ids().size() != records.size()) {
      throw ValidationError("features.csv is out of step with corpus.jsonl");
    }
    const std::vector<int> y = Labels(records);
    const PartitionRows p = PartitionByDate(records, config_.split);
    const FeatureMatrix train = matrix.SelectRows(p.train);
    const FeatureMatrix val = matrix.SelectRows(p.validation);
    const FeatureMatrix test = matrix.SelectRows(p.test);
    const auto ytr = Pick(y, p.train), yva = Pick(y, p.validation), yte = Pick(y, p.test);

    const gbdt::TuneResult tuned = gbdt::Tune(config_.grid, train, ytr, val, yva,
                                              static_cast<std::size_t>(config_.workers));
    const gbdt::GbdtModel& model = tuned.best_fit.model;
    model.Save(OutputPath(artifact::kModel));

    TrainSummary s;
    s.best = tuned.best;
    s.train_rows = p.train.size();
    s.validation_rows = p.validation.size();
    s.test_rows = p.test.size();
    s.leaderboard = tuned.leaderboard;
    const gbdt::UniformBaseline uniform(ytr);
    const gbdt::BernoulliBaseline bernoulli(ytr, DeriveSeed(config_.seed, kBaselineStream));
    for (const auto& [split, set, labels] :
         {std::tuple{"validation", &val, &yva}, std::tuple{"test", &test, &yte}}) {
      s.metrics.push_back({"gbdt", split, gbdt::Evaluate(model, *set, *labels, config_.threshold)});
      s.metrics.push_back(
          {"uniform_baseline", split, gbdt::ComputeMetrics(*labels, uniform.Predict(labels->size()))});
      s.metrics.push_back({"random_baseline", split,
                           gbdt::ComputeMetrics(*labels, bernoulli.Predict(labels->size()))});
    }
    WriteArtifact(artifact::kPerformance, gbdt::FormatMetricsCsv(s.metrics));
    WriteArtifact(artifact::kLeaderboard, gbdt::FormatLeaderboardCsv(s.leaderboard));

    std::vector<gbdt::FeatureImportance> importance;
    if (model.trees().empty()) {
      LogWarning("the selected model has no splits; importance shares are all zero");
      for (const auto& c : model.columns()) importance.push_back({c.name, 0.0});
    } else {
      importance = model.GainImportance();
    }
    WriteArtifact(artifact::kFeatureImportance, FormatImportanceCsv(importance, model.columns()));
    const auto groups = gbdt::GroupImportance(importance, model.columns());
    std::ostringstream group_csv;
    group_csv << "group,share\n";
    for (const auto& [group, share] : groups) {
      group_csv << FeatureGroupName(group) << ',' << FormatFixed(share, 8) << '\n';
    }
    WriteArtifact(artifact::kGroupImportance, group_csv.str());

    ordered_json meta;
    meta["config_hash"] = config_hash_;
    meta["seed"] = config_.seed;
    meta["feature_count"] = model.num_features();
    meta["best_params"] = s.best.ToJson();
    meta["best_iteration"] = model.best_iteration();
    meta["num_trees"] = model.trees().size();
    meta["rows"] = {{"train", s.train_rows}, {"validation", s.validation_rows}, {"test", s.test_rows}};
    meta["test_metrics"] = MetricsJson(s.metrics[3].metrics);
    WriteJson(artifact::kModelMeta, meta);
    return s;
  });
}

std::vector<AblationRow> Study::Ablate() {
  auto records = LoadCorpus();
  FeatureMatrix matrix = LoadFeatures();
  return RunStage("ablate", [&] {
    const std::vector<int> y = Labels(records);
    const PartitionRows p = PartitionByDate(records, config_.split);
    const auto ytr = Pick(y, p.train), yva = Pick(y, p.validation), yte = Pick(y, p.test);
    std::vector<AblationRow> rows;
    std::ostringstream csv;
    csv << "feature_set,num_features,precision,recall,f1,accuracy\n";
    for (const auto& [name, cols] : AblationFeatureSets(matrix.columns())) {
      const FeatureMatrix subset = matrix.SelectColumns(cols);
      const gbdt::TuneResult tuned =
          gbdt::Tune(config_.grid, subset.SelectRows(p.train), ytr, subset.SelectRows(p.validation),
                     yva, static_cast<std::size_t>(config_.workers));
      AblationRow row{name, cols.size(),
                      gbdt::Evaluate(tuned.best_fit.model, subset.SelectRows(p.test), yte,
                                     config_.threshold)};
      csv << row.feature_set << ',' << row.num_features << ',' << FormatFixed(row.test.precision, 4)
          << ',' << FormatFixed(row.test.recall, 4) << ',' << FormatFixed(row.test.f1, 4) << ','
          << FormatFixed(row.test.accuracy, 4) << '\n';
      rows.push_back(std::move(row));
    }
    WriteArtifact(artifact::kAblation, csv.str());
    return rows;
  });
}

void Study::Explain() {
  auto records = LoadCorpus();
  FeatureMatrix matrix = LoadFeatures();
  RunStage("explain", [&] {
    const ExplainResult r = RunExplanatoryRegressions(matrix, Labels(records));
    WriteArtifact(artifact::kLogit, FormatExplainCsv(r));
    WriteArtifact(artifact::kLogitFit, FormatExplainFitCsv(r));
    WriteArtifact(artifact::kAcsPca, FormatPcaCsv(r));
    WriteArtifact(artifact::kAcsPcaLoadings, FormatPcaLoadingsCsv(r));
  });
}

SimulationReport Study::Simulate() {
  auto records = LoadCorpus();
  FeatureMatrix matrix = LoadFeatures();
  gbdt::GbdtModel model = LoadModel();
  return RunStage("simulate", [&] {
    const AugmentMode mode = config_.simulation.mode;
    std::size_t n = config_.simulation.sample_size;
    if (n == 0) n = EligibleForSimulation(matrix, mode).size();
    const auto sample =
        SelectSimulationSample(matrix, n, DeriveSeed(config_.seed, kSimulationStream), mode);
    SimulationReport report = RunCounterfactual(sample, records, matrix, model, client(),
                                                resources(), mode, config_.workers);
    std::string rows;
    for (const auto& r : report.rows) rows += SimulationRowToJson(r).dump() + "\n";
    WriteArtifact(artifact::kSimulationRows, rows);
    WriteArtifact(artifact::kFig3, FormatSimulationSummaryCsv(report));
    WriteArtifact(artifact::kRobustness, FormatRegressionTablesCsv(report.robustness));
    WriteArtifact(artifact::kHeterogeneity, FormatRegressionTablesCsv(report.heterogeneity));

    ordered_json summary;
    summary["mode"] = AugmentModeName(mode);
    summary["sampled"] = sample.size();
    summary["simulated"] = report.rows.size();
    summary["excluded_rewrite_violations"] = report.excluded_ids.size();
    summary["excluded_ids"] = report.excluded_ids;
    for (const auto& [name, a] : {std::pair{"all", &report.all}, std::pair{"funded", &report.funded},
                                  std::pair{"unfunded", &report.unfunded}}) {
      summary["aggregates"][name] = {{"n", a->n},
                                     {"mean_before", a->mean_before},
                                     {"mean_after", a->mean_after},
                                     {"mean_lift", a->mean_lift},
                                     {"share_improved", a->share_improved}};
    }
    for (const auto* tables : {&report.robustness, &report.heterogeneity}) {
      for (const auto& t : *tables) {
        if (!t.fit) summary["skipped_models"][t.model] = t.skipped_reason;
      }
    }
    WriteJson(artifact::kSimulationSummary, summary);
    return report;
  });
}

ExperimentDesign Study::Design() {
  if (!Fresh(artifact::kSimulationRows)) Simulate();
  return RunStage("design-experiment", [&] {
    SimulationReport sim;
    const auto summary =
        nlohmann::json::parse(ReadFileToString(OutputPath(artifact::kSimulationSummary).string()));
    sim.mode = ParseAugmentMode(summary.at("mode").get<std::string>());
    std::ifstream in(OutputPath(artifact::kSimulationRows));
    std::string line;
    while (std::getline(in, line)) {
      if (!Trim(line).empty()) sim.rows.push_back(SimulationRowFromJson(nlohmann::json::parse(line)));
    }
    ExperimentDesign design = DesignExperiment(sim, client(), DeriveSeed(config_.seed, kDesignStream));
    WriteJson(artifact::kDesign, DesignToJson(design));
    WriteArtifact(artifact::kDraws, FormatDrawLogCsv(design));
    return design;
  });
}

ExperimentAnalysis Study::AnalyzeExperiment(const fs::path& choices) {
  return RunStage("analyze-experiment", [&] {
    const fs::path path = choices.empty() ? config_.choices_path : choices;
    if (path.empty()) throw ValidationError("no choice records configured (choices_path)");
    PrepareOutputDir();
    const ExperimentAnalysis a = pipeline::AnalyzeExperiment(LoadChoices(path));
    WriteArtifact(artifact::kFig4, FormatPreferenceCsv(a));
    WriteArtifact(artifact::kClogit, FormatClogitCsv(a));
    WriteArtifact(artifact::kKs, FormatKsCsv(a));
    WriteJson(artifact::kAnalysis, AnalysisToJson(a));
    return a;
  });
}

ordered_json Study::Report() {
  return RunStage("report", [&] {
    PrepareOutputDir();
    ordered_json manifest;
    manifest["config_hash"] = config_hash_;
    manifest["artifacts"] = ordered_json::array();
    for (std::string_view name : artifact::All()) {
      ordered_json e;
      e["name"] = name;
      const fs::path p = OutputPath(name);
      if (fs::exists(p)) {
        e["sha256"] = Sha256Hex(ReadFileToString(p.string()));
        e["bytes"] = fs::file_size(p);
      } else {
        e["sha256"] = "absent";
      }
      manifest["artifacts"].push_back(e);
    }
    WriteJson(artifact::kManifest, manifest);
    return manifest;
  });
}

ordered_json Study::RunAll() {
  Ingest();
  Features();
  Train();
  Ablate();
  Explain();
  Simulate();
  Design();
  if (!config_.choices_path.empty()) AnalyzeExperiment();
  return Report();
}

}  // namespace crowdlift::pipeline
