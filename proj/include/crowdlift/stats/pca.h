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

#ifndef CROWDLIFT_STATS_PCA_H_
#define CROWDLIFT_STATS_PCA_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace crowdlift::stats {

// Principal components of the correlation matrix. Loadings are columns of
// `loadings` (one row per kept input column), each signed so its
// largest-magnitude entry is positive.
struct PcaModel {
  std::vector<std::size_t> kept_columns;  // input columns that had variance
  std::vector<std::string> dropped;       // names of zero-variance columns
  Eigen::VectorXd means;
  Eigen::VectorXd scales;  // sample standard deviations
  Eigen::MatrixXd loadings;
  Eigen::VectorXd eigenvalues;      // of the kept components
  Eigen::VectorXd explained_ratio;  // eigenvalue / number of kept columns

  // Rows of X (all original columns) to component scores.
  Eigen::MatrixXd Transform(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd Standardize(const Eigen::MatrixXd& x) const;
};

// Throws ValidationError unless n >= 2 and k <= min(n - 1, p) after
// zero-variance columns are dropped (each drop is logged as a warning).
PcaModel FitPca(const Eigen::MatrixXd& x, int k, const std::vector<std::string>& names = {});

}  // namespace crowdlift::stats

#endif  // CROWDLIFT_STATS_PCA_H_
