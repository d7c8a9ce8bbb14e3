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

#include "crowdlift/stats/clogit.h"

#include "crowdlift/common/error.h"
#include "crowdlift/stats/distributions.h"

namespace crowdlift::stats {

Eigen::MatrixXd DifferencedAttributes(std::span<const ChoicePair> pairs) {
  if (pairs.empty()) throw ValidationError("conditional logit needs at least one pair");
  const std::size_t k = pairs.front().a.size();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const ChoicePair& p = pairs[i];
    if (p.a.size() != k || p.b.size() != k) {
      throw ValidationError("pair " + std::to_string(i) + " has ragged attribute vectors");
    }
    if (p.chosen != 0 && p.chosen != 1) {
      throw ValidationError("pair " + std::to_string(i) + " must choose exactly one alternative");
    }
    for (std::size_t j = 0; j < k; ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p.a[j] - p.b[j];
    }
  }
  return d;
}

std::vector<int> ChoseA(std::span<const ChoicePair> pairs) {
  std::vector<int> y;
  y.reserve(pairs.size());
  for (const auto& p : pairs) y.push_back(p.chosen == 0 ? 1 : 0);
  return y;
}

ClogitFit FitConditionalLogit(std::span<const ChoicePair> pairs, std::vector<std::string> names) {
  const Eigen::MatrixXd d = DifferencedAttributes(pairs);
  if (static_cast<Eigen::Index>(names.size()) != d.cols()) {
    throw ValidationError("conditional logit: one name per attribute required");
  }
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    if (d.col(j).isZero(0.0)) {
      throw ValidationError("attribute " + names[static_cast<std::size_t>(j)] +
                            " never differs within a pair; its effect is unidentified");
    }
  }
  LogitOptions options;
  options.add_intercept = false;
  const LogitFit logit = FitLogistic(d, ChoseA(pairs), names, options);

  ClogitFit fit;
  fit.names = std::move(names);
  fit.beta = logit.beta;
  fit.covariance = logit.covariance;
  fit.log_likelihood = logit.log_likelihood;
  fit.convergence = logit.convergence;
  const Eigen::VectorXd eta = d * fit.beta;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double pa = Sigmoid(eta(i));
    fit.pair_probabilities.push_back({pa, 1.0 - pa});
  }
  const Eigen::VectorXd se = fit.StandardErrors();
  fit.probability_contrast.resize(fit.beta.size());
  fit.contrast_se.resize(fit.beta.size());
  for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
    const double s = Sigmoid(fit.beta(j));
    fit.probability_contrast(j) = s - 0.5;
    fit.contrast_se(j) = s * (1.0 - s) * se(j);
  }
  return fit;
}

}  // namespace crowdlift::stats
