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

#ifndef CROWDLIFT_STATS_CLOGIT_H_
#define CROWDLIFT_STATS_CLOGIT_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crowdlift/stats/regression.h"

namespace crowdlift::stats {

// One binary choice between alternatives a and b, each described by the same
// attribute vector layout.
struct ChoicePair {
  std::vector<double> a;
  std::vector<double> b;
  int chosen = 0;  // 0 picks a, 1 picks b
};

struct ClogitFit {
  std::vector<std::string> names;
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance;
  double log_likelihood = 0.0;
  ConvergenceReport convergence;
  // Per pair, probabilities of choosing a and b (they sum to 1).
  std::vector<std::array<double, 2>> pair_probabilities;
  // sigmoid(beta_k) - 0.5: the change in choice probability from giving an
  // alternative attribute k against an otherwise identical rival, with its
  // delta-method SE.
  Eigen::VectorXd probability_contrast;
  Eigen::VectorXd contrast_se;

  Eigen::VectorXd StandardErrors() const { return covariance.diagonal().cwiseSqrt(); }
};

// Maximizes the conditional likelihood by reduction to intercept-free
// logistic regression of [a chosen] on (attributes_a - attributes_b).
// Throws ValidationError on ragged pairs, an invalid choice index, or an
// attribute whose within-pair difference is zero everywhere.
ClogitFit FitConditionalLogit(std::span<const ChoicePair> pairs, std::vector<std::string> names);

// The differenced design and outcome the fit reduces to.
Eigen::MatrixXd DifferencedAttributes(std::span<const ChoicePair> pairs);
std::vector<int> ChoseA(std::span<const ChoicePair> pairs);

}  // namespace crowdlift::stats

#endif  // CROWDLIFT_STATS_CLOGIT_H_
