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

#include "crowdlift/gbdt/binning.h"

#include <algorithm>
#include <cmath>

#include "crowdlift/common/error.h"

namespace crowdlift::gbdt {

FeatureBins FeatureBins::Fit(std::span<const double> values, int max_bins) {
  if (max_bins < 2) throw ValidationError("max_bins must be >= 2");
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> edges;
  if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
    // One bin per distinct value; the largest needs no upper edge.
    if (!distinct.empty()) edges.assign(distinct.begin(), distinct.end() - 1);
  } else {
    // Edges at the k/max_bins quantiles of the sorted sample.
    const std::size_t n = sorted.size();
    for (int k = 1; k < max_bins; ++k) {
      const std::size_t pos = (n * static_cast<std::size_t>(k)) / static_cast<std::size_t>(max_bins);
      const double edge = sorted[std::min(pos, n - 1)];
      if (edge == sorted.back()) break;
      if (edges.empty() || edge > edges.back()) edges.push_back(edge);
    }
  }
  return FeatureBins(std::move(edges));
}

BinIndex FeatureBins::Bin(double v) const {
  if (std::isnan(v)) return missing_bin();
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), v);
  return static_cast<BinIndex>(it - edges_.begin());
}

}  // namespace crowdlift::gbdt
