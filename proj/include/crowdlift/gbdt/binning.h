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

#ifndef CROWDLIFT_GBDT_BINNING_H_
#define CROWDLIFT_GBDT_BINNING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace crowdlift::gbdt {

using BinIndex = std::uint16_t;

// Quantile bins for one feature. Every edge is an observed training value and
// bin b holds values v with edges[b-1] < v <= edges[b]; values above the last
// edge fall in the final value bin. Missing values get their own bin after the
// value bins. Because edges are data points, not midpoints, a strictly
// increasing transform of the column maps every value to the same bin.
class FeatureBins {
 public:
  FeatureBins() = default;
  explicit FeatureBins(std::vector<double> edges) : edges_(std::move(edges)) {}

  // `max_bins` counts value bins; must be >= 2. NaN entries are skipped.
  static FeatureBins Fit(std::span<const double> values, int max_bins);

  const std::vector<double>& edges() const { return edges_; }
  std::size_t num_value_bins() const { return edges_.size() + 1; }
  BinIndex missing_bin() const { return static_cast<BinIndex>(edges_.size() + 1); }
  std::size_t num_bins() const { return edges_.size() + 2; }

  BinIndex Bin(double v) const;

 private:
  std::vector<double> edges_;
};

}  // namespace crowdlift::gbdt

#endif  // CROWDLIFT_GBDT_BINNING_H_
