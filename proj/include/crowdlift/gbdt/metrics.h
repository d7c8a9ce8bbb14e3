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

#ifndef CROWDLIFT_GBDT_METRICS_H_
#define CROWDLIFT_GBDT_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/gbdt/model.h"

namespace crowdlift::gbdt {

// Positive class is "funded" (label 1). Precision is 0 when nothing is
// predicted positive; F1 is 0 when precision and recall are both 0.
struct EvalMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
};

EvalMetrics ComputeMetrics(std::span<const int> labels, std::span<const int> predictions);

// Throws ValidationError on an empty set or a threshold outside (0, 1).
EvalMetrics Evaluate(const GbdtModel& model, const FeatureMatrix& set, std::span<const int> labels,
                     double threshold = 0.5);

// Always predicts the training majority class; an exact tie predicts 1.
class UniformBaseline {
 public:
  explicit UniformBaseline(std::span<const int> train_labels);
  int majority() const { return majority_; }
  std::vector<int> Predict(std::size_t n) const { return std::vector<int>(n, majority_); }

 private:
  int majority_ = 1;
};

// Predicts 1 with the training positive rate, drawn from a seeded stream.
class BernoulliBaseline {
 public:
  BernoulliBaseline(std::span<const int> train_labels, std::uint64_t seed);
  double p() const { return p_; }
  std::vector<int> Predict(std::size_t n) const;

 private:
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
};

// Table-S7-shaped rows: model,split,precision,recall,f1,accuracy.
struct MetricsRow {
  std::string model;
  std::string split;
  EvalMetrics metrics;
};
std::string FormatMetricsCsv(std::span<const MetricsRow> rows);

}  // namespace crowdlift::gbdt

#endif  // CROWDLIFT_GBDT_METRICS_H_
