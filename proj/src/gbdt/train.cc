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

#include "crowdlift/gbdt/train.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/random.h"
#include "crowdlift/gbdt/metrics.h"

namespace crowdlift::gbdt {
namespace {

// Gradients and hessians are accumulated as 2^-32 fixed point. Integer sums
// do not depend on row order, which keeps the model invariant under row
// permutation and makes the parent-minus-sibling histogram trick exact.
constexpr double kScale = 4294967296.0;
constexpr double kPriorClamp = 1e-6;

struct Stat {
  std::int64_t g = 0;
  std::int64_t h = 0;
  std::int64_t n = 0;

  Stat& operator+=(const Stat& o) {
    g += o.g;
    h += o.h;
    n += o.n;
    return *this;
  }
  Stat& operator-=(const Stat& o) {
    g -= o.g;
    h -= o.h;
    n -= o.n;
    return *this;
  }
  friend Stat operator+(Stat a, const Stat& b) { return a += b; }
  friend Stat operator-(Stat a, const Stat& b) { return a -= b; }
};

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Returns -inf when the denominator vanishes, so such sides never win.
double Score(const Stat& s, double lambda) {
  const double h = static_cast<double>(s.h) / kScale + lambda;
  if (!(h > 0.0)) return -std::numeric_limits<double>::infinity();
  const double g = static_cast<double>(s.g) / kScale;
  return g * g / h;
}

double LeafValue(const Stat& s, double lambda) {
  const double h = static_cast<double>(s.h) / kScale + lambda;
  if (!(h > 0.0)) return 0.0;
  return -(static_cast<double>(s.g) / kScale) / h;
}

struct Split {
  double gain = 0.0;
  int feature = -1;
  int bin = 0;
  bool default_left = true;
  bool valid() const { return feature >= 0; }
};

struct Leaf {
  int node = 0;
  std::vector<std::uint32_t> rows;
  std::vector<Stat> hist;  // flattened over features via offsets
  Stat total;
  Split best;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<BinIndex>>& binned, const std::vector<FeatureBins>& bins,
              const std::vector<std::size_t>& offsets, std::size_t hist_size,
              const GbdtParams& params)
      : binned_(binned), bins_(bins), offsets_(offsets), hist_size_(hist_size), params_(params) {}

  // Returns an empty tree when the root admits no split with positive gain.
  Tree Grow(std::vector<std::uint32_t> rows, const std::vector<Stat>& row_stats,
            const std::vector<char>& feature_allowed) {
    row_stats_ = &row_stats;
    allowed_ = &feature_allowed;
    Tree tree;
    tree.nodes.emplace_back();
    std::vector<Leaf> leaves;
    leaves.push_back(MakeLeaf(0, std::move(rows)));
    FindBest(leaves.back());
    if (!leaves.back().best.valid()) return {};

    while (static_cast<int>(leaves.size()) < params_.max_leaves) {
      std::size_t pick = leaves.size();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].best.valid()) continue;
        if (pick == leaves.size() || leaves[i].best.gain > leaves[pick].best.gain ||
            (leaves[i].best.gain == leaves[pick].best.gain && leaves[i].node < leaves[pick].node)) {
          pick = i;
        }
      }
      if (pick == leaves.size()) break;
      Leaf parent = std::move(leaves[pick]);
      leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(pick));
      auto [left, right] = SplitLeaf(tree, std::move(parent));
      leaves.push_back(std::move(left));
      leaves.push_back(std::move(right));
    }
    for (const Leaf& leaf : leaves) {
      tree.nodes[static_cast<std::size_t>(leaf.node)].value =
          params_.learning_rate * LeafValue(leaf.total, params_.l2_reg);
    }
    return tree;
  }

 private:
  Leaf MakeLeaf(int node, std::vector<std::uint32_t> rows) {
    Leaf leaf;
    leaf.node = node;
    leaf.rows = std::move(rows);
    leaf.hist.assign(hist_size_, Stat{});
    for (std::size_t f = 0; f < binned_.size(); ++f) {
      if (!(*allowed_)[f]) continue;
      Stat* h = leaf.hist.data() + offsets_[f];
      const auto& col = binned_[f];
      for (std::uint32_t r : leaf.rows) h[col[r]] += (*row_stats_)[r];
    }
    for (std::uint32_t r : leaf.rows) leaf.total += (*row_stats_)[r];
    return leaf;
  }

  void FindBest(Leaf& leaf) const {
    const double lambda = params_.l2_reg;
    const double parent = Score(leaf.total, lambda);
    const std::int64_t min_n = params_.min_samples_leaf;
    Split best;
    for (std::size_t f = 0; f < binned_.size(); ++f) {
      if (!(*allowed_)[f]) continue;
      const Stat* h = leaf.hist.data() + offsets_[f];
      const std::size_t nvb = bins_[f].num_value_bins();
      const Stat missing = h[bins_[f].missing_bin()];
      const Stat values = leaf.total - missing;
      Stat left;
      for (std::size_t t = 0; t + 1 < nvb; ++t) {
        left += h[t];
        const Stat right = values - left;
        for (bool default_left : {true, false}) {
          // Without missing rows the direction is moot; keep the left default.
          if (!default_left && missing.n == 0) continue;
          const Stat l = default_left ? left + missing : left;
          const Stat r = default_left ? right : right + missing;
          if (l.n < min_n || r.n < min_n) continue;
          const double gain = Score(l, lambda) + Score(r, lambda) - parent;
          if (gain > best.gain) {
            best = {gain, static_cast<int>(f), static_cast<int>(t), default_left};
          }
        }
      }
    }
    leaf.best = best;
  }

  std::pair<Leaf, Leaf> SplitLeaf(Tree& tree, Leaf parent) {
    const Split s = parent.best;
    const auto& col = binned_[static_cast<std::size_t>(s.feature)];
    const BinIndex missing = bins_[static_cast<std::size_t>(s.feature)].missing_bin();
    std::vector<std::uint32_t> left_rows, right_rows;
    for (std::uint32_t r : parent.rows) {
      const BinIndex b = col[r];
      const bool go_left = b == missing ? s.default_left : b <= s.bin;
      (go_left ? left_rows : right_rows).push_back(r);
    }
    const int left_node = static_cast<int>(tree.nodes.size());
    const int right_node = left_node + 1;
    TreeNode& node = tree.nodes[static_cast<std::size_t>(parent.node)];
    node.feature = s.feature;
    node.threshold_bin = s.bin;
    node.threshold = bins_[static_cast<std::size_t>(s.feature)].edges()[static_cast<std::size_t>(s.bin)];
    node.default_left = s.default_left;
    node.left = left_node;
    node.right = right_node;
    node.gain = s.gain;
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();

    // Build the smaller child directly and derive its sibling by subtraction.
    const bool left_small = left_rows.size() <= right_rows.size();
    Leaf small = MakeLeaf(left_small ? left_node : right_node,
                          std::move(left_small ? left_rows : right_rows));
    Leaf large;
    large.node = left_small ? right_node : left_node;
    large.rows = std::move(left_small ? right_rows : left_rows);
    large.hist = std::move(parent.hist);
    for (std::size_t i = 0; i < hist_size_; ++i) large.hist[i] -= small.hist[i];
    large.total = parent.total - small.total;
    FindBest(small);
    FindBest(large);
    // Histograms are only needed by leaves that may still split.
    if (!small.best.valid()) std::vector<Stat>().swap(small.hist);
    if (!large.best.valid()) std::vector<Stat>().swap(large.hist);
    if (left_small) return {std::move(small), std::move(large)};
    return {std::move(large), std::move(small)};
  }

  const std::vector<std::vector<BinIndex>>& binned_;
  const std::vector<FeatureBins>& bins_;
  const std::vector<std::size_t>& offsets_;
  std::size_t hist_size_;
  const GbdtParams& params_;
  const std::vector<Stat>* row_stats_ = nullptr;
  const std::vector<char>* allowed_ = nullptr;
};

double PredictBinned(const Tree& tree, const std::vector<std::vector<BinIndex>>& binned,
                     const std::vector<FeatureBins>& bins, std::size_t row) {
  std::size_t i = 0;
  while (!tree.nodes[i].is_leaf()) {
    const TreeNode& n = tree.nodes[i];
    const auto f = static_cast<std::size_t>(n.feature);
    const BinIndex b = binned[f][row];
    const bool left = b == bins[f].missing_bin() ? n.default_left : b <= n.threshold_bin;
    i = static_cast<std::size_t>(left ? n.left : n.right);
  }
  return tree.nodes[i].value;
}

void CheckLabels(std::span<const int> labels, std::size_t rows, const char* what) {
  if (labels.size() != rows) {
    throw ValidationError(std::string(what) + " has " + std::to_string(rows) + " rows but " +
                          std::to_string(labels.size()) + " labels");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw ValidationError(std::string(what) + " label " + std::to_string(y) + " is not 0 or 1");
    }
  }
}

void CheckValues(const FeatureMatrix& m) {
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::size_t c = 0; c < m.num_columns(); ++c) {
      if (std::isinf(m.at(r, c))) {
        throw ValidationError("infinite value in row " + m.row_ids()[r] + ", column " +
                              m.columns()[c].name);
      }
    }
  }
}

std::vector<char> SampleFeatures(std::size_t count, const GbdtParams& params, int round) {
  std::vector<char> allowed(count, 1);
  if (params.feature_fraction >= 1.0 || count == 0) return allowed;
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(params.feature_fraction * static_cast<double>(count))));
  Rng rng(DeriveSeed(params.seed, 2 * static_cast<std::uint64_t>(round) + 1));
  std::fill(allowed.begin(), allowed.end(), 0);
  for (std::size_t f : rng.SampleWithoutReplacement(count, k)) allowed[f] = 1;
  return allowed;
}

std::vector<std::uint32_t> SampleRows(std::size_t n, const GbdtParams& params, int round) {
  std::vector<std::uint32_t> rows;
  if (params.bagging_fraction >= 1.0) {
    rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<std::uint32_t>(i);
    return rows;
  }
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(params.bagging_fraction * static_cast<double>(n))));
  Rng rng(DeriveSeed(params.seed, 2 * static_cast<std::uint64_t>(round)));
  for (std::size_t i : rng.SampleWithoutReplacement(n, k)) rows.push_back(static_cast<std::uint32_t>(i));
  std::sort(rows.begin(), rows.end());
  return rows;
}

double F1At(std::span<const double> margins, std::span<const int> labels) {
  std::vector<int> pred(margins.size());
  for (std::size_t i = 0; i < margins.size(); ++i) pred[i] = Sigmoid(margins[i]) >= 0.5 ? 1 : 0;
  return ComputeMetrics(labels, pred).f1;
}

double LogLossOfMargins(std::span<const double> margins, std::span<const int> labels) {
  std::vector<double> p(margins.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = Sigmoid(margins[i]);
  return LogLoss(p, labels);
}

}  // namespace

double LogLoss(std::span<const double> probabilities, std::span<const int> labels) {
  if (probabilities.size() != labels.size() || labels.empty()) {
    throw ValidationError("logloss needs equally sized, nonempty inputs");
  }
  constexpr double kEps = 1e-15;
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(probabilities[i], kEps, 1.0 - kEps);
    sum -= labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return sum / static_cast<double>(labels.size());
}

FitResult Fit(const FeatureMatrix& train, std::span<const int> labels, const GbdtParams& params,
              const FeatureMatrix& val, std::span<const int> val_labels) {
  params.Validate();
  if (train.num_rows() == 0) throw ValidationError("training set is empty");
  CheckLabels(labels, train.num_rows(), "training set");
  CheckValues(train);
  const bool use_val = val.num_rows() > 0;
  if (use_val) {
    if (!(val.columns() == train.columns())) {
      throw ValidationError("validation columns differ from training columns");
    }
    CheckLabels(val_labels, val.num_rows(), "validation set");
  }

  const std::size_t n = train.num_rows();
  const std::size_t num_features = train.num_columns();
  std::vector<FeatureBins> bins;
  std::vector<std::vector<BinIndex>> binned(num_features);
  std::vector<std::size_t> offsets(num_features);
  std::size_t hist_size = 0;
  for (std::size_t f = 0; f < num_features; ++f) {
    const std::vector<double> col = train.column(f);
    bins.push_back(FeatureBins::Fit(col, params.max_bins));
    binned[f].resize(n);
    for (std::size_t r = 0; r < n; ++r) binned[f][r] = bins[f].Bin(col[r]);
    offsets[f] = hist_size;
    hist_size += bins[f].num_bins();
  }

  std::size_t positives = 0;
  for (int y : labels) positives += static_cast<std::size_t>(y);
  const double prior =
      std::clamp(static_cast<double>(positives) / static_cast<double>(n), kPriorClamp, 1.0 - kPriorClamp);
  const double base = std::log(prior / (1.0 - prior));

  FitResult result;
  result.model = GbdtModel(train.columns(), bins, base, params);
  if (positives == 0 || positives == n) {
    LogWarning("all training labels are " + std::to_string(labels[0]) +
               "; the model predicts the prior only");
    return result;
  }

  std::vector<double> margin(n, base);
  std::vector<double> val_margin(val.num_rows(), base);
  std::vector<Stat> row_stats(n);
  TreeBuilder builder(binned, bins, offsets, hist_size, params);
  double best_f1 = -1.0;
  double best_loss = std::numeric_limits<double>::infinity();
  int best_round = 0;
  std::vector<Tree> trees;

  for (int round = 0; round < params.num_rounds; ++round) {
    for (std::size_t r = 0; r < n; ++r) {
      const double p = Sigmoid(margin[r]);
      row_stats[r] = {std::llround((p - labels[r]) * kScale), std::llround(p * (1.0 - p) * kScale), 1};
    }
    Tree tree = builder.Grow(SampleRows(n, params, round), row_stats,
                             SampleFeatures(num_features, params, round));
    if (tree.nodes.empty()) break;
    for (std::size_t r = 0; r < n; ++r) margin[r] += PredictBinned(tree, binned, bins, r);

    RoundLog log;
    log.round = round + 1;
    log.train_logloss = LogLossOfMargins(margin, labels);
    if (use_val) {
      for (std::size_t r = 0; r < val.num_rows(); ++r) val_margin[r] += tree.Predict(val.row(r));
      log.val_f1 = F1At(val_margin, val_labels);
      log.val_logloss = LogLossOfMargins(val_margin, val_labels);
    }
    trees.push_back(std::move(tree));
    result.history.push_back(log);

    if (!use_val) continue;
    if (log.val_f1 > best_f1 || (log.val_f1 == best_f1 && log.val_logloss < best_loss)) {
      best_f1 = log.val_f1;
      best_loss = log.val_logloss;
      best_round = log.round;
    } else if (params.early_stopping_rounds > 0 &&
               log.round - best_round >= params.early_stopping_rounds) {
      break;
    }
  }

  const std::size_t keep = use_val ? static_cast<std::size_t>(best_round) : trees.size();
  for (std::size_t i = 0; i < keep; ++i) result.model.AddTree(std::move(trees[i]));
  result.model.set_best_iteration(static_cast<int>(keep));
  if (use_val && best_round > 0) {
    result.best_val_f1 = best_f1;
    result.best_val_logloss = best_loss;
  } else if (use_val) {
    const std::vector<double> base_margin(val.num_rows(), base);
    result.best_val_f1 = F1At(base_margin, val_labels);
    result.best_val_logloss = LogLossOfMargins(base_margin, val_labels);
  }
  return result;
}

}  // namespace crowdlift::gbdt
