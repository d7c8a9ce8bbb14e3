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

#include "crowdlift/pipeline/counterfactual.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/parallel.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/context/assemble.h"
#include "crowdlift/llmfeat/augment.h"
#include "crowdlift/stats/distributions.h"
#include "crowdlift/textfeat/tokenizer.h"

namespace crowdlift::pipeline {
namespace {

// Smallest subset the robustness and heterogeneity regressions are run on.
constexpr std::size_t kMinRegressionRows = 4;

std::string_view RewriteFor(const llm::AugmentationResult& r, AugmentMode mode) {
  switch (mode) {
    case AugmentMode::kCorrectThree:
      return r.correct_three;
    case AugmentMode::kAddGratitude:
      return r.add_gratitude;
    case AugmentMode::kMinusGratitude:
      return r.minus_gratitude;
  }
  return r.correct_three;
}

// Mean and sample standard deviation; a zero deviation maps every value to 0.
std::vector<double> ZScore(const std::vector<double>& v) {
  if (v.empty()) return {};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  std::vector<double> out(v.size(), 0.0);
  if (sd > 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  }
  return out;
}

bool IsConstant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double Median(std::vector<double> v) {
  std::erase_if(v, [](double x) { return IsMissing(x); });
  if (v.empty()) return kMissing;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Fits OLS on the named regressors, dropping constant ones first.
RegressionTable FitTable(std::string model, const std::vector<std::string>& names,
                         const std::vector<std::vector<double>>& columns,
                         const std::vector<double>& y) {
  RegressionTable table{std::move(model), std::nullopt, ""};
  if (y.size() < kMinRegressionRows) {
    table.skipped_reason = "only " + std::to_string(y.size()) + " observations";
    return table;
  }
  std::vector<std::string> kept_names;
  std::vector<const std::vector<double>*> kept;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (IsConstant(columns[k])) {
      LogWarning("dropping constant regressor " + names[k] + " from " + table.model);
      continue;
    }
    kept_names.push_back(names[k]);
    kept.push_back(&columns[k]);
  }
  if (kept.empty()) {
    table.skipped_reason = "no regressor varies";
    return table;
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(y.size()), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (*kept[k])[i];
    }
  }
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  try {
    table.fit = stats::FitOls(x, yv, kept_names);
  } catch (const Error& e) {
    table.skipped_reason = e.what();
  }
  return table;
}

RegressionTable RobustnessTable(std::string model, const std::vector<const SimulationRow*>& rows) {
  std::vector<double> aug, words, y;
  for (const SimulationRow* r : rows) {
    aug.push_back(0.0);
    words.push_back(static_cast<double>(r->words_before));
    y.push_back(r->before);
    aug.push_back(1.0);
    words.push_back(static_cast<double>(r->words_after));
    y.push_back(r->after);
  }
  return FitTable(std::move(model), {"augmentation", "word_count_z"}, {aug, ZScore(words)}, y);
}

}  // namespace

std::size_t WordCount(std::string_view text) { return text::Tokenize(text).tokens.size(); }

std::vector<double> CounterfactualRow(std::span<const double> original_row,
                                      std::string_view augmented_text,
                                      const text::TextResources& resources, llm::LlmClient& client) {
  if (original_row.size() != context::kTotalFeatureCount) {
    throw ValidationError("counterfactual row needs " + std::to_string(context::kTotalFeatureCount) +
                          " values");
  }
  std::vector<double> row(original_row.begin(), original_row.end());
  const std::vector<double> textual =
      context::TextualFeatures(std::string(augmented_text), resources, client);
  std::copy(textual.begin(), textual.end(), row.begin());
  return row;
}

std::vector<std::string> EligibleForSimulation(const FeatureMatrix& matrix, AugmentMode mode) {
  const std::size_t gratitude = matrix.ColumnIndex("gratitude_expressed");
  const std::size_t match = matrix.ColumnIndex("match_grant_mentioned");
  const std::size_t urgency = matrix.ColumnIndex("urgency_explained");
  std::vector<std::string> ids;
  for (std::size_t r = 0; r < matrix.num_rows(); ++r) {
    bool ok = false;
    switch (mode) {
      case AugmentMode::kCorrectThree:
        ok = matrix.at(r, gratitude) == 0.0 && matrix.at(r, match) == 0.0 &&
             matrix.at(r, urgency) == 0.0;
        break;
      case AugmentMode::kAddGratitude:
        ok = matrix.at(r, gratitude) == 0.0;
        break;
      case AugmentMode::kMinusGratitude:
        ok = matrix.at(r, gratitude) == 1.0;
        break;
    }
    if (ok) ids.push_back(matrix.row_ids()[r]);
  }
  return ids;
}

std::vector<std::string> SelectSimulationSample(const FeatureMatrix& matrix, std::size_t n,
                                                std::uint64_t seed, AugmentMode mode) {
  const std::vector<std::string> eligible = EligibleForSimulation(matrix, mode);
  if (n == 0) throw ValidationError("simulation sample size must be positive");
  if (n > eligible.size()) {
    throw ValidationError("simulation sample of " + std::to_string(n) + " requested but only " +
                          std::to_string(eligible.size()) + " campaigns are eligible for " +
                          std::string(AugmentModeName(mode)));
  }
  Rng rng(seed);
  std::vector<std::size_t> picks = rng.SampleWithoutReplacement(eligible.size(), n);
  std::sort(picks.begin(), picks.end());
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i : picks) out.push_back(eligible[i]);
  return out;
}

nlohmann::ordered_json SimulationRowToJson(const SimulationRow& row) {
  nlohmann::ordered_json j;
  j["id"] = row.id;
  j["funded"] = row.funded;
  j["before"] = row.before;
  j["after"] = row.after;
  j["lift"] = row.lift;
  j["words_before"] = row.words_before;
  j["words_after"] = row.words_after;
  j["original_text"] = row.original_text;
  j["augmented_text"] = row.augmented_text;
  return j;
}

SimulationRow SimulationRowFromJson(const nlohmann::json& j) {
  try {
    SimulationRow r;
    r.id = j.at("id").get<std::string>();
    r.funded = j.at("funded").get<bool>();
    r.before = j.at("before").get<double>();
    r.after = j.at("after").get<double>();
    r.lift = j.at("lift").get<double>();
    r.words_before = j.at("words_before").get<std::size_t>();
    r.words_after = j.at("words_after").get<std::size_t>();
    r.original_text = j.at("original_text").get<std::string>();
    r.augmented_text = j.at("augmented_text").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("simulation row", std::string("malformed simulation row: ") + e.what());
  }
}

SimulationAggregate Aggregate(const std::vector<SimulationRow>& rows, std::optional<bool> funded) {
  SimulationAggregate a;
  std::vector<double> before, after;
  std::size_t improved = 0;
  for (const auto& r : rows) {
    if (funded && r.funded != *funded) continue;
    before.push_back(r.before);
    after.push_back(r.after);
    a.mean_lift += r.lift;
    if (r.lift > 0.0) ++improved;
  }
  a.n = before.size();
  if (a.n == 0) return a;
  const double n = static_cast<double>(a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    a.mean_before += before[i];
    a.mean_after += after[i];
  }
  a.mean_before /= n;
  a.mean_after /= n;
  a.mean_lift /= n;
  a.share_improved = static_cast<double>(improved) / n;
  if (a.n > 1) {
    double sb = 0.0, sa = 0.0;
    for (std::size_t i = 0; i < a.n; ++i) {
      sb += (before[i] - a.mean_before) * (before[i] - a.mean_before);
      sa += (after[i] - a.mean_after) * (after[i] - a.mean_after);
    }
    a.sd_before = std::sqrt(sb / (n - 1.0));
    a.sd_after = std::sqrt(sa / (n - 1.0));
  }
  return a;
}

SimulationReport RunCounterfactual(const std::vector<std::string>& sample,
                                   const std::vector<corpus::CampaignRecord>& records,
                                   const FeatureMatrix& matrix, const gbdt::GbdtModel& model,
                                   llm::LlmClient& client, const text::TextResources& resources,
                                   AugmentMode mode, int workers) {
  if (matrix.columns() != context::CanonicalColumns()) {
    throw ValidationError("counterfactual simulation needs the canonical 168-column layout");
  }
  std::map<std::string, const corpus::CampaignRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);

  struct Outcome {
    std::optional<SimulationRow> row;
    std::string violation;
  };
  auto outcomes = OrderedParallelMap<Outcome>(
      sample.size(), static_cast<std::size_t>(std::max(1, workers)), [&](std::size_t i) {
        const std::string& id = sample[i];
        const auto rec = by_id.find(id);
        const auto row_index = matrix.FindRow(id);
        if (rec == by_id.end() || !row_index) {
          throw ValidationError("simulation sample id " + id + " is not in the corpus");
        }
        const corpus::CampaignRecord& record = *rec->second;
        Outcome out;
        std::string augmented;
        try {
          augmented = std::string(RewriteFor(llm::AugmentThree(record.description, client), mode));
        } catch (const llm::RewriteViolationError& e) {
          out.violation = e.what();
          return out;
        }
        const auto original_row = matrix.row(*row_index);
        const std::vector<double> augmented_row =
            CounterfactualRow(original_row, augmented, resources, client);

        SimulationRow row;
        row.id = id;
        row.funded = record.funded;
        row.before = model.PredictProba(original_row);
        row.after = model.PredictProba(augmented_row);
        row.lift = row.after - row.before;
        row.words_before = WordCount(record.description);
        row.words_after = WordCount(augmented);
        row.original_text = record.description;
        row.augmented_text = std::move(augmented);
        out.row = std::move(row);
        return out;
      });

  SimulationReport report;
  report.mode = mode;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].row) {
      report.rows.push_back(std::move(*outcomes[i].row));
    } else {
      LogWarning("excluding " + sample[i] + " from the simulation: " + outcomes[i].violation);
      report.excluded_ids.push_back(sample[i]);
    }
  }
  SummarizeSimulation(report, matrix);
  return report;
}

void SummarizeSimulation(SimulationReport& report, const FeatureMatrix& matrix) {
  report.all = Aggregate(report.rows);
  report.funded = Aggregate(report.rows, true);
  report.unfunded = Aggregate(report.rows, false);

  std::vector<const SimulationRow*> all, funded, unfunded;
  for (const auto& r : report.rows) {
    all.push_back(&r);
    (r.funded ? funded : unfunded).push_back(&r);
  }
  report.robustness = {RobustnessTable("all", all), RobustnessTable("funded", funded),
                       RobustnessTable("unfunded", unfunded)};

  const std::size_t edu = matrix.ColumnIndex("pct_bachelors");
  const char* config_names[] = {"goal_amount", "organizer_male", "has_beneficiary",
                                "gofundme_organized"};
  std::vector<double> lift, education;
  std::vector<std::vector<double>> config(4);
  for (const auto& r : report.rows) {
    const auto row = matrix.FindRow(r.id);
    if (!row) throw ValidationError("simulation row " + r.id + " is not in the feature matrix");
    lift.push_back(r.lift);
    education.push_back(matrix.at(*row, edu));
    for (std::size_t k = 0; k < 4; ++k) {
      config[k].push_back(matrix.at(*row, matrix.ColumnIndex(config_names[k])));
    }
  }
  const double median = Median(education);
  for (double& v : education) {
    if (IsMissing(v)) v = IsMissing(median) ? 0.0 : median;
  }
  const std::vector<double> education_z = ZScore(education);
  report.heterogeneity.clear();
  report.heterogeneity.push_back(FitTable("education", {"pct_bachelors_z"}, {education_z}, lift));
  report.heterogeneity.push_back(FitTable(
      "with_configuration",
      {"pct_bachelors_z", "goal_amount_z", "organizer_male", "has_beneficiary",
       "gofundme_organized"},
      {education_z, ZScore(config[0]), config[1], config[2], config[3]}, lift));
}

std::string FormatRegressionTablesCsv(const std::vector<RegressionTable>& tables) {
  std::ostringstream out;
  out << "model,term,estimate,se,p_value,stars,num_obs\n";
  for (const auto& t : tables) {
    if (!t.fit) {
      out << t.model << ",skipped,NA,NA,NA,,0\n";
      continue;
    }
    const auto& f = *t.fit;
    for (std::size_t j = 0; j < f.names.size(); ++j) {
      const auto i = static_cast<Eigen::Index>(j);
      out << t.model << ',' << f.names[j] << ',' << FormatFixed(f.beta(i), 6) << ','
          << FormatFixed(f.se(i), 6) << ',' << FormatFixed(f.p_values(i), 6) << ','
          << stats::Stars(f.p_values(i)) << ',' << f.num_obs << '\n';
    }
  }
  return out.str();
}

std::string FormatSimulationSummaryCsv(const SimulationReport& report) {
  std::ostringstream out;
  out << "group,n,mean_before,sd_before,mean_after,sd_after,mean_lift,share_improved\n";
  for (const auto& [name, a] : {std::pair{"all", &report.all}, std::pair{"funded", &report.funded},
                                std::pair{"unfunded", &report.unfunded}}) {
    out << name << ',' << a->n << ',' << FormatFixed(a->mean_before, 6) << ','
        << FormatFixed(a->sd_before, 6) << ',' << FormatFixed(a->mean_after, 6) << ','
        << FormatFixed(a->sd_after, 6) << ',' << FormatFixed(a->mean_lift, 6) << ','
        << FormatFixed(a->share_improved, 6) << '\n';
  }
  return out.str();
}

}  // namespace crowdlift::pipeline
