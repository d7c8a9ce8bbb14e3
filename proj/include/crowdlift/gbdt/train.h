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

#ifndef CROWDLIFT_GBDT_TRAIN_H_
#define CROWDLIFT_GBDT_TRAIN_H_

#include <span>
#include <vector>

#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/gbdt/model.h"
#include "crowdlift/gbdt/params.h"

namespace crowdlift::gbdt {

struct RoundLog {
  int round = 0;
  double train_logloss = 0.0;
  double val_f1 = 0.0;
  double val_logloss = 0.0;
};

struct FitResult {
  GbdtModel model;
  std::vector<RoundLog> history;
  double best_val_f1 = 0.0;
  double best_val_logloss = 0.0;
};

// Boosted trees on binary logloss. When `val` has rows, every round is scored
// on it and the model is cut back to the round with the best validation F1
// (lower validation logloss breaks ties); training stops after
// early_stopping_rounds rounds without improvement. Labels must be 0 or 1.
// Single-class training labels yield a tree-less model with a warning.
FitResult Fit(const FeatureMatrix& train, std::span<const int> labels, const GbdtParams& params,
              const FeatureMatrix& val = {}, std::span<const int> val_labels = {});

double LogLoss(std::span<const double> probabilities, std::span<const int> labels);

}  // namespace crowdlift::gbdt

#endif  // CROWDLIFT_GBDT_TRAIN_H_
