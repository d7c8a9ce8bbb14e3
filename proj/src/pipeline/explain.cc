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

#include "crowdlift/pipeline/explain.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/context/acs.h"
#include "crowdlift/stats/distributions.h"

namespace crowdlift::pipeline {
namespace {

struct Regressor {
  std::string name;
  std::vector<double> values;
};

const std::vector<std::string>& ConfigurationColumns() {
  static const std::vector<std::string> cols = {"goal_amount", "organizer_male", "has_beneficiary",
                                                "gofundme_organized"};
  return cols;
}

bool IsBinary(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

bool IsConstant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double Median(std::vector<double> v) {
  std::erase_if(v, [](double x) { return IsMissing(x); });
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> ImputedColumn(const FeatureMatrix& matrix, const std::string& name) {
  std::vector<double> v = matrix.column(matrix.ColumnIndex(name));
  const double median = Median(v);
  for (double& x : v) {
    if (IsMissing(x)) x = median;
  }
  return v;
}

void ZScoreInPlace(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  for (double& x : v) x = (x - mean) / sd;
}

LogitModelResult FitModel(std::string name, const std::vector<Regressor>& regressors,
                          std::span<const int> funded) {
  LogitModelResult result;
  result.model = std::move(name);
  std::vector<const Regressor*> kept;
  for (const auto& r : regressors) {
    if (IsConstant(r.values)) {
      LogWarning("dropping constant regressor " + r.name + " from logit model " + result.model);
      continue;
    }
    kept.push_back(&r);
    result.regressors.push_back(r.name);
  }
  if (kept.empty()) {
    result.skipped_reason = "no regressor varies";
    return result;
  }
  const auto n = static_cast<Eigen::Index>(funded.size());
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(kept.size()));
  std::vector<stats::RegressorKind> kinds;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    std::vector<double> v = kept[k]->values;
    const bool binary = IsBinary(v);
    if (!binary) ZScoreInPlace(v);
    kinds.push_back(binary ? stats::RegressorKind::kBinary : stats::RegressorKind::kContinuous);
    for (Eigen::Index i = 0; i < n; ++i) x(i, static_cast<Eigen::Index>(k)) = v[static_cast<std::size_t>(i)];
  }
  try {
    result.fit = stats::FitLogistic(x, funded, result.regressors);
    result.ame = stats::AverageMarginalEffects(*result.fit, x, kinds);
  } catch (const Error& e) {
    result.fit.reset();
    result.skipped_reason = e.what();
    LogWarning("logit model " + result.model + " not estimated: " + e.what());
  }
  return result;
}

}  // namespace

const std::vector<std::string>& ExplanatoryTextColumns() {
  static const std::vector<std::string> cols = {
      "dict_we",          "dict_you",           "word_count",
      "words_per_sentence", "syllables_per_word", "concreteness",
      "small_business_specified", "employees_mentioned", "rent_mentioned",
      "business_longer_2y", "new_business",     "match_grant_mentioned",
      "gratitude_expressed", "urgency_explained", "contains_spam",
      "dominance",        "social_comparison_better", "self_comparison_worse",
      "extrinsic_incentive"};
  return cols;
}

ExplainResult RunExplanatoryRegressions(const FeatureMatrix& matrix, std::span<const int> funded) {
  if (matrix.num_rows() != funded.size()) {
    throw ValidationError("explanatory regressions: labels do not match the feature matrix");
  }
  if (matrix.num_rows() < 3) {
    throw ValidationError("explanatory regressions need at least 3 campaigns");
  }
  ExplainResult result;
  const auto n = static_cast<Eigen::Index>(matrix.num_rows());

  std::vector<Regressor> configuration;
  for (const auto& name : ConfigurationColumns()) {
    configuration.push_back({name, ImputedColumn(matrix, name)});
  }

  Eigen::MatrixXd acs(n, static_cast<Eigen::Index>(context::kAcsFeatureCount));
  for (std::size_t k = 0; k < context::kAcsFeatureCount; ++k) {
    const std::string name(context::AcsColumns()[k].name);
    result.acs_names.push_back(name);
    const std::vector<double> v = ImputedColumn(matrix, name);
    for (Eigen::Index i = 0; i < n; ++i) acs(i, static_cast<Eigen::Index>(k)) = v[static_cast<std::size_t>(i)];
  }
  std::vector<Regressor> context = configuration;
  int variable_columns = 0;
  for (Eigen::Index k = 0; k < acs.cols(); ++k) {
    if ((acs.col(k).array() != acs(0, k)).any()) ++variable_columns;
  }
  const int k_pcs = std::min<int>({kAcsComponents, static_cast<int>(n) - 1, variable_columns});
  if (k_pcs >= 1) {
    result.acs_pca = stats::FitPca(acs, k_pcs, result.acs_names);
    const Eigen::MatrixXd scores = result.acs_pca->Transform(acs);
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      std::vector<double> v(scores.col(c).data(), scores.col(c).data() + n);
      context.push_back({"acs_pc" + std::to_string(c + 1), std::move(v)});
    }
  } else {
    LogWarning("demographic columns do not vary; no components extracted");
  }
  context.push_back({"covid_cases_7d", ImputedColumn(matrix, "covid_cases_7d")});
  context.push_back({"covid_share_of_us", ImputedColumn(matrix, "covid_share_of_us")});

  std::vector<Regressor> full = context;
  for (const auto& name : ExplanatoryTextColumns()) full.push_back({name, ImputedColumn(matrix, name)});

  result.models.push_back(FitModel("configuration", configuration, funded));
  result.models.push_back(FitModel("context", context, funded));
  result.models.push_back(FitModel("textual", full, funded));
  return result;
}

std::string FormatExplainCsv(const ExplainResult& r) {
  std::ostringstream out;
  out << "model,term,kind,ame,se,p_value,stars\n";
  for (const auto& m : r.models) {
    if (!m.fit) {
      out << m.model << ",skipped,,NA,NA,NA,\n";
      continue;
    }
    for (const auto& e : m.ame.entries) {
      out << m.model << ',' << e.name << ','
          << (e.kind == stats::RegressorKind::kBinary ? "binary" : "continuous") << ','
          << FormatFixed(e.ame, 6) << ',' << FormatFixed(e.se, 6) << ','
          << FormatFixed(e.p_value, 6) << ',' << stats::Stars(e.p_value) << '\n';
    }
  }
  return out.str();
}

std::string FormatExplainFitCsv(const ExplainResult& r) {
  std::ostringstream out;
  out << "model,status,num_obs,log_likelihood,mcfadden_r2\n";
  for (const auto& m : r.models) {
    if (!m.fit) {
      out << m.model << ",skipped,0,NA,NA\n";
      continue;
    }
    out << m.model << ",ok," << m.fit->num_obs << ',' << FormatFixed(m.fit->log_likelihood, 6)
        << ',' << FormatFixed(m.fit->mcfadden_r2, 6) << '\n';
  }
  return out.str();
}

std::string FormatPcaCsv(const ExplainResult& r) {
  std::ostringstream out;
  out << "component,eigenvalue,explained_ratio,cumulative_ratio\n";
  if (!r.acs_pca) return out.str();
  double cumulative = 0.0;
  for (Eigen::Index c = 0; c < r.acs_pca->eigenvalues.size(); ++c) {
    cumulative += r.acs_pca->explained_ratio(c);
    out << "acs_pc" << c + 1 << ',' << FormatFixed(r.acs_pca->eigenvalues(c), 6) << ','
        << FormatFixed(r.acs_pca->explained_ratio(c), 6) << ',' << FormatFixed(cumulative, 6)
        << '\n';
  }
  return out.str();
}

std::string FormatPcaLoadingsCsv(const ExplainResult& r) {
  std::ostringstream out;
  out << "column";
  if (!r.acs_pca) return out.str() + "\n";
  const auto& pca = *r.acs_pca;
  for (Eigen::Index c = 0; c < pca.loadings.cols(); ++c) out << ",acs_pc" << c + 1;
  out << '\n';
  for (std::size_t k = 0; k < pca.kept_columns.size(); ++k) {
    out << r.acs_names[pca.kept_columns[k]];
    for (Eigen::Index c = 0; c < pca.loadings.cols(); ++c) {
      out << ',' << FormatFixed(pca.loadings(static_cast<Eigen::Index>(k), c), 6);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace crowdlift::pipeline
