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

#include "crowdlift/gbdt/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "nlohmann/json.hpp"

namespace crowdlift::gbdt {
namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

[[noreturn]] void Corrupt(const std::string& what) {
  throw ValidationError("corrupt model file: " + what);
}

}  // namespace

double Tree::Predict(std::span<const double> row) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    const double v = row[static_cast<std::size_t>(n.feature)];
    const bool left = std::isnan(v) ? n.default_left : v <= n.threshold;
    i = static_cast<std::size_t>(left ? n.left : n.right);
  }
  return nodes[i].value;
}

std::size_t Tree::num_leaves() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.is_leaf() ? 1 : 0;
  return n;
}

GbdtModel::GbdtModel(std::vector<FeatureColumn> columns, std::vector<FeatureBins> bins,
                     double base_score, GbdtParams params)
    : columns_(std::move(columns)),
      bins_(std::move(bins)),
      feature_gain_(columns_.size(), 0.0),
      base_score_(base_score),
      params_(params) {
  if (bins_.size() != columns_.size()) {
    throw ValidationError("model needs one bin table per feature");
  }
}

void GbdtModel::AddTree(Tree tree) {
  for (const auto& node : tree.nodes) {
    if (!node.is_leaf()) feature_gain_[static_cast<std::size_t>(node.feature)] += node.gain;
  }
  trees_.push_back(std::move(tree));
}

void GbdtModel::Truncate(std::size_t num_trees) {
  if (num_trees >= trees_.size()) return;
  std::vector<Tree> kept(trees_.begin(), trees_.begin() + static_cast<std::ptrdiff_t>(num_trees));
  trees_.clear();
  std::fill(feature_gain_.begin(), feature_gain_.end(), 0.0);
  for (auto& t : kept) AddTree(std::move(t));
}

void GbdtModel::CheckWidth(std::size_t width) const {
  if (width != columns_.size()) {
    throw ValidationError("row has " + std::to_string(width) + " features, model expects " +
                          std::to_string(columns_.size()));
  }
}

double GbdtModel::PredictMargin(std::span<const double> row) const {
  CheckWidth(row.size());
  double score = base_score_;
  for (const auto& tree : trees_) score += tree.Predict(row);
  return score;
}

double GbdtModel::PredictProba(std::span<const double> row) const {
  return Sigmoid(PredictMargin(row));
}

std::vector<double> GbdtModel::PredictProba(const FeatureMatrix& matrix) const {
  CheckWidth(matrix.num_columns());
  std::vector<double> out(matrix.num_rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = PredictProba(matrix.row(r));
  return out;
}

std::vector<FeatureImportance> GbdtModel::GainImportance() const {
  const double total = std::accumulate(feature_gain_.begin(), feature_gain_.end(), 0.0);
  if (!(total > 0.0)) throw ValidationError("model has no splits; gain importance is undefined");
  std::vector<FeatureImportance> out;
  out.reserve(columns_.size());
  for (std::size_t f = 0; f < columns_.size(); ++f) {
    out.push_back({columns_[f].name, feature_gain_[f] / total});
  }
  return out;
}

std::map<FeatureGroup, double> GroupImportance(std::span<const FeatureImportance> importance,
                                               std::span<const FeatureColumn> columns) {
  std::map<FeatureGroup, double> out;
  for (FeatureGroup g : kAllFeatureGroups) out[g] = 0.0;
  for (const auto& fi : importance) {
    const auto it = std::find_if(columns.begin(), columns.end(),
                                 [&](const FeatureColumn& c) { return c.name == fi.feature; });
    if (it == columns.end()) throw ValidationError("feature '" + fi.feature + "' has no group tag");
    out[it->group] += fi.share;
  }
  return out;
}

std::string GbdtModel::ToJsonString() const {
  nlohmann::ordered_json j;
  j["format"] = kModelFormatName;
  j["version"] = kModelFormatVersion;
  j["params"] = params_.ToJson();
  j["base_score"] = base_score_;
  j["best_iteration"] = best_iteration_;
  auto& features = j["features"] = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < columns_.size(); ++f) {
    nlohmann::ordered_json fj;
    fj["name"] = columns_[f].name;
    fj["group"] = FeatureGroupName(columns_[f].group);
    fj["bin_edges"] = bins_[f].edges();
    fj["split_gain"] = feature_gain_[f];
    features.push_back(std::move(fj));
  }
  auto& trees = j["trees"] = nlohmann::ordered_json::array();
  for (const auto& tree : trees_) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes) {
      nlohmann::ordered_json nj;
      if (n.is_leaf()) {
        nj["leaf"] = n.value;
      } else {
        nj["feature"] = n.feature;
        nj["threshold_bin"] = n.threshold_bin;
        nj["threshold"] = n.threshold;
        nj["default_left"] = n.default_left;
        nj["left"] = n.left;
        nj["right"] = n.right;
        nj["gain"] = n.gain;
      }
      nodes.push_back(std::move(nj));
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  return j.dump(1) + "\n";
}

GbdtModel GbdtModel::FromJsonString(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    Corrupt(e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != kModelFormatName) {
      Corrupt("not a " + std::string(kModelFormatName) + " model");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ValidationError("unsupported model version " + std::to_string(version) +
                            " (this build reads version " +
                            std::to_string(kModelFormatVersion) + ")");
    }
    std::vector<FeatureColumn> columns;
    std::vector<FeatureBins> bins;
    for (const auto& fj : j.at("features")) {
      columns.push_back(
          {fj.at("name").get<std::string>(), ParseFeatureGroup(fj.at("group").get<std::string>())});
      auto edges = fj.at("bin_edges").get<std::vector<double>>();
      if (!std::is_sorted(edges.begin(), edges.end())) Corrupt("unsorted bin edges");
      bins.emplace_back(std::move(edges));
    }
    GbdtModel model(std::move(columns), std::move(bins), j.at("base_score").get<double>(),
                    GbdtParams::FromJson(j.at("params")));
    model.best_iteration_ = j.at("best_iteration").get<int>();
    const int width = static_cast<int>(model.columns_.size());
    for (const auto& tj : j.at("trees")) {
      Tree tree;
      const auto& nodes = tj.at("nodes");
      const int size = static_cast<int>(nodes.size());
      if (size == 0) Corrupt("empty tree");
      for (int i = 0; i < size; ++i) {
        const auto& nj = nodes[static_cast<std::size_t>(i)];
        TreeNode n;
        if (nj.contains("leaf")) {
          n.value = nj.at("leaf").get<double>();
        } else {
          n.feature = nj.at("feature").get<int>();
          n.threshold_bin = nj.at("threshold_bin").get<int>();
          n.threshold = nj.at("threshold").get<double>();
          n.default_left = nj.at("default_left").get<bool>();
          n.left = nj.at("left").get<int>();
          n.right = nj.at("right").get<int>();
          n.gain = nj.at("gain").get<double>();
          if (n.feature >= width) Corrupt("split on feature " + std::to_string(n.feature));
          // Children always follow their parent, which also rules out cycles.
          if (n.left <= i || n.right <= i || n.left >= size || n.right >= size) {
            Corrupt("bad child index in tree " + std::to_string(model.trees_.size()));
          }
          if (!(n.gain >= 0.0)) Corrupt("negative split gain");
        }
        tree.nodes.push_back(n);
      }
      model.AddTree(std::move(tree));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    Corrupt(e.what());
  }
}

void GbdtModel::Save(const std::filesystem::path& path) const {
  WriteStringToFile(path.string(), ToJsonString());
}

GbdtModel GbdtModel::Load(const std::filesystem::path& path) {
  return FromJsonString(ReadFileToString(path.string()));
}

}  // namespace crowdlift::gbdt
