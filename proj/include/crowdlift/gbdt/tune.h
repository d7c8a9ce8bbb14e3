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

#ifndef CROWDLIFT_GBDT_TUNE_H_
#define CROWDLIFT_GBDT_TUNE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/gbdt/params.h"
#include "crowdlift/gbdt/train.h"

namespace crowdlift::gbdt {

struct LeaderboardEntry {
  std::size_t index = 0;  // position in the grid
  GbdtParams params;
  double val_f1 = 0.0;
  double val_logloss = 0.0;
  int rounds = 0;  // trees kept after early stopping
};

struct TuneResult {
  GbdtParams best;
  FitResult best_fit;
  // Sorted best first: higher F1, then fewer rounds, then lower index.
  std::vector<LeaderboardEntry> leaderboard;
};

// Fits every candidate (up to `workers` at a time; the ranking does not
// depend on it). Throws ValidationError on an empty grid.
TuneResult Tune(std::span<const GbdtParams> grid, const FeatureMatrix& train,
                std::span<const int> labels, const FeatureMatrix& val,
                std::span<const int> val_labels, std::size_t workers = 1);

std::string FormatLeaderboardCsv(std::span<const LeaderboardEntry> leaderboard);

}  // namespace crowdlift::gbdt

#endif  // CROWDLIFT_GBDT_TUNE_H_
