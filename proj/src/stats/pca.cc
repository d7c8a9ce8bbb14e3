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

#include "crowdlift/stats/pca.h"

#include <cmath>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"

namespace crowdlift::stats {

Eigen::MatrixXd PcaModel::Standardize(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd z(x.rows(), static_cast<Eigen::Index>(kept_columns.size()));
  for (std::size_t j = 0; j < kept_columns.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    z.col(jj) = (x.col(static_cast<Eigen::Index>(kept_columns[j])).array() - means(jj)) / scales(jj);
  }
  return z;
}

Eigen::MatrixXd PcaModel::Transform(const Eigen::MatrixXd& x) const {
  return Standardize(x) * loadings;
}

PcaModel FitPca(const Eigen::MatrixXd& x, int k, const std::vector<std::string>& names) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw ValidationError("PCA needs at least two rows");
  if (!x.allFinite()) throw ValidationError("PCA input has missing or infinite cells");
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != x.cols()) {
    throw ValidationError("PCA: one name per column required");
  }
  PcaModel model;
  std::vector<double> means, scales;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().sum() / static_cast<double>(n - 1));
    if (!(sd > 1e-12 * std::max(1.0, std::fabs(mean)))) {
      const std::string name = names.empty() ? "column " + std::to_string(j) : names[static_cast<std::size_t>(j)];
      LogWarning("PCA: dropping zero-variance " + name);
      model.dropped.push_back(name);
      continue;
    }
    model.kept_columns.push_back(static_cast<std::size_t>(j));
    means.push_back(mean);
    scales.push_back(sd);
  }
  const auto p = static_cast<Eigen::Index>(model.kept_columns.size());
  if (k < 1 || k > std::min<Eigen::Index>(n - 1, p)) {
    throw ValidationError("PCA: k = " + std::to_string(k) + " must lie in [1, min(n - 1, p) = " +
                          std::to_string(std::min<Eigen::Index>(n - 1, p)) + "]");
  }
  model.means = Eigen::Map<Eigen::VectorXd>(means.data(), p);
  model.scales = Eigen::Map<Eigen::VectorXd>(scales.data(), p);
  const Eigen::MatrixXd z = model.Standardize(x);
  const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  if (eig.info() != Eigen::Success) throw NumericalError("PCA eigendecomposition failed");

  model.loadings.resize(p, k);
  model.eigenvalues.resize(k);
  for (int c = 0; c < k; ++c) {
    const Eigen::Index src = p - 1 - c;  // eigenvalues come ascending
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    model.loadings.col(c) = v;
    model.eigenvalues(c) = std::max(0.0, eig.eigenvalues()(src));
  }
  model.explained_ratio = model.eigenvalues / static_cast<double>(p);
  return model;
}

}  // namespace crowdlift::stats
