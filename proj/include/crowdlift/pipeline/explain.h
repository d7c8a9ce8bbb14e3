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

#ifndef CROWDLIFT_PIPELINE_EXPLAIN_H_
#define CROWDLIFT_PIPELINE_EXPLAIN_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/stats/pca.h"
#include "crowdlift/stats/regression.h"

namespace crowdlift::pipeline {

inline constexpr int kAcsComponents = 5;

// Textual regressors of the third model.
const std::vector<std::string>& ExplanatoryTextColumns();

struct LogitModelResult {
  std::string model;
  std::vector<std::string> regressors;  // after dropping constant columns
  std::optional<stats::LogitFit> fit;
  stats::AmeReport ame;
  std::string skipped_reason;
};

struct ExplainResult {
  std::optional<stats::PcaModel> acs_pca;
  std::vector<std::string> acs_names;
  std::vector<LogitModelResult> models;
};

// Three nested logits of the funded outcome with average marginal effects:
// configuration; plus the leading demographic components (median-imputed
// ACS columns) and pandemic shock; plus the textual regressors. Columns with
// only 0/1 values enter as binary, all others are z-scored, and constant
// columns are dropped. A model that cannot be estimated is reported with its
// reason instead of failing the rest.
ExplainResult RunExplanatoryRegressions(const FeatureMatrix& matrix, std::span<const int> funded);

// model,term,kind,ame,se,p_value,stars
std::string FormatExplainCsv(const ExplainResult& r);
// model,status,num_obs,log_likelihood,mcfadden_r2
std::string FormatExplainFitCsv(const ExplainResult& r);
// component,eigenvalue,explained_ratio,cumulative_ratio
std::string FormatPcaCsv(const ExplainResult& r);
// column,pc1..pcK
std::string FormatPcaLoadingsCsv(const ExplainResult& r);

}  // namespace crowdlift::pipeline

#endif  // CROWDLIFT_PIPELINE_EXPLAIN_H_
