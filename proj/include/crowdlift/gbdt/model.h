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

#ifndef CROWDLIFT_GBDT_MODEL_H_
#define CROWDLIFT_GBDT_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/gbdt/binning.h"
#include "crowdlift/gbdt/params.h"

namespace crowdlift::gbdt {

inline constexpr int kModelFormatVersion = 1;
inline constexpr std::string_view kModelFormatName = "crowdlift-gbdt";

// Internal node when `feature >= 0`, otherwise a leaf carrying `value`.
// Rows with x <= threshold go left; missing values follow default_left.
struct TreeNode {
  int feature = -1;
  int threshold_bin = 0;
  double threshold = 0.0;
  bool default_left = true;
  int left = -1;
  int right = -1;
  double value = 0.0;
  double gain = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double Predict(std::span<const double> row) const;
  std::size_t num_leaves() const;
  friend bool operator==(const Tree&, const Tree&) = default;
};

struct FeatureImportance {
  std::string feature;
  double share = 0.0;
};

class GbdtModel {
 public:
  GbdtModel() = default;
  GbdtModel(std::vector<FeatureColumn> columns, std::vector<FeatureBins> bins, double base_score,
            GbdtParams params);

  // Raw additive score (log-odds).
  double PredictMargin(std::span<const double> row) const;
  // Throws ValidationError when the row width differs from the model's.
  double PredictProba(std::span<const double> row) const;
  std::vector<double> PredictProba(const FeatureMatrix& matrix) const;

  // Per-feature cumulative split gain normalized to sum to 1, in column order.
  // Throws ValidationError on a model without splits.
  std::vector<FeatureImportance> GainImportance() const;

  void AddTree(Tree tree);
  void Truncate(std::size_t num_trees);
  void set_best_iteration(int it) { best_iteration_ = it; }

  const std::vector<FeatureColumn>& columns() const { return columns_; }
  const std::vector<FeatureBins>& bins() const { return bins_; }
  const std::vector<Tree>& trees() const { return trees_; }
  const std::vector<double>& feature_gain() const { return feature_gain_; }
  const GbdtParams& params() const { return params_; }
  double base_score() const { return base_score_; }
  int best_iteration() const { return best_iteration_; }
  std::size_t num_features() const { return columns_.size(); }

  // Versioned JSON dump. Load throws ValidationError on a version or format
  // mismatch and on truncated or malformed content, IoError when unreadable.
  std::string ToJsonString() const;
  static GbdtModel FromJsonString(std::string_view text);
  void Save(const std::filesystem::path& path) const;
  static GbdtModel Load(const std::filesystem::path& path);

  friend bool operator==(const GbdtModel&, const GbdtModel&) = default;

 private:
  void CheckWidth(std::size_t width) const;

  std::vector<FeatureColumn> columns_;
  std::vector<FeatureBins> bins_;
  std::vector<Tree> trees_;
  std::vector<double> feature_gain_;
  double base_score_ = 0.0;
  int best_iteration_ = 0;
  GbdtParams params_;
};

inline bool operator==(const FeatureBins& a, const FeatureBins& b) { return a.edges() == b.edges(); }

// Sums feature shares per group. Every group appears in the result, including
// those with zero share. Throws ValidationError for a feature absent from
// `columns`.
std::map<FeatureGroup, double> GroupImportance(std::span<const FeatureImportance> importance,
                                               std::span<const FeatureColumn> columns);

}  // namespace crowdlift::gbdt

#endif  // CROWDLIFT_GBDT_MODEL_H_
