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

#include "crowdlift/gbdt/tune.h"

#include <algorithm>
#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/parallel.h"
#include "crowdlift/common/strings.h"

namespace crowdlift::gbdt {

TuneResult Tune(std::span<const GbdtParams> grid, const FeatureMatrix& train,
                std::span<const int> labels, const FeatureMatrix& val,
                std::span<const int> val_labels, std::size_t workers) {
  if (grid.empty()) throw ValidationError("hyperparameter grid is empty");
  std::vector<FitResult> fits = OrderedParallelMap<FitResult>(
      grid.size(), workers,
      [&](std::size_t i) { return Fit(train, labels, grid[i], val, val_labels); });

  TuneResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.leaderboard.push_back({i, grid[i], fits[i].best_val_f1, fits[i].best_val_logloss,
                                  static_cast<int>(fits[i].model.trees().size())});
  }
  std::stable_sort(result.leaderboard.begin(), result.leaderboard.end(),
                   [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
                     if (a.val_f1 != b.val_f1) return a.val_f1 > b.val_f1;
                     if (a.rounds != b.rounds) return a.rounds < b.rounds;
                     return a.index < b.index;
                   });
  const std::size_t best = result.leaderboard.front().index;
  result.best = grid[best];
  result.best_fit = std::move(fits[best]);
  return result;
}

std::string FormatLeaderboardCsv(std::span<const LeaderboardEntry> leaderboard) {
  std::ostringstream out;
  out << "rank,grid_index,max_leaves,learning_rate,min_samples_leaf,num_rounds,rounds_kept,val_f1,"
         "val_logloss\n";
  for (std::size_t i = 0; i < leaderboard.size(); ++i) {
    const auto& e = leaderboard[i];
    out << i + 1 << ',' << e.index << ',' << e.params.max_leaves << ','
        << FormatDouble(e.params.learning_rate) << ',' << e.params.min_samples_leaf << ','
        << e.params.num_rounds << ',' << e.rounds << ',' << FormatFixed(e.val_f1, 4) << ','
        << FormatFixed(e.val_logloss, 4) << '\n';
  }
  return out.str();
}

}  // namespace crowdlift::gbdt
