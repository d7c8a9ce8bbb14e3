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

#include "crowdlift/gbdt/params.h"

#include <string>

#include "crowdlift/common/error.h"

namespace crowdlift::gbdt {
namespace {

void Require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ValidationError(std::string("gbdt param ") + field + " " + what);
}

}  // namespace

void GbdtParams::Validate() const {
  Require(num_rounds >= 0, "num_rounds", "must be >= 0");
  Require(learning_rate > 0.0, "learning_rate", "must be > 0");
  Require(max_leaves >= 2, "max_leaves", "must be >= 2");
  Require(min_samples_leaf >= 1, "min_samples_leaf", "must be >= 1");
  Require(max_bins >= 2 && max_bins <= 65000, "max_bins", "must be in [2, 65000]");
  Require(feature_fraction > 0.0 && feature_fraction <= 1.0, "feature_fraction",
          "must be in (0, 1]");
  Require(bagging_fraction > 0.0 && bagging_fraction <= 1.0, "bagging_fraction",
          "must be in (0, 1]");
  Require(l2_reg >= 0.0, "l2_reg", "must be >= 0");
  Require(early_stopping_rounds >= 0, "early_stopping_rounds", "must be >= 0");
}

nlohmann::ordered_json GbdtParams::ToJson() const {
  nlohmann::ordered_json j;
  j["num_rounds"] = num_rounds;
  j["learning_rate"] = learning_rate;
  j["max_leaves"] = max_leaves;
  j["min_samples_leaf"] = min_samples_leaf;
  j["max_bins"] = max_bins;
  j["feature_fraction"] = feature_fraction;
  j["bagging_fraction"] = bagging_fraction;
  j["l2_reg"] = l2_reg;
  j["early_stopping_rounds"] = early_stopping_rounds;
  j["seed"] = seed;
  return j;
}

GbdtParams GbdtParams::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("gbdt", "gbdt params must be an object");
  GbdtParams p;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "num_rounds") p.num_rounds = value.get<int>();
      else if (key == "learning_rate") p.learning_rate = value.get<double>();
      else if (key == "max_leaves") p.max_leaves = value.get<int>();
      else if (key == "min_samples_leaf") p.min_samples_leaf = value.get<int>();
      else if (key == "max_bins") p.max_bins = value.get<int>();
      else if (key == "feature_fraction") p.feature_fraction = value.get<double>();
      else if (key == "bagging_fraction") p.bagging_fraction = value.get<double>();
      else if (key == "l2_reg") p.l2_reg = value.get<double>();
      else if (key == "early_stopping_rounds") p.early_stopping_rounds = value.get<int>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else throw SchemaError(key, "unknown gbdt param '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw SchemaError(key, "gbdt param '" + key + "' has the wrong type");
    }
  }
  p.Validate();
  return p;
}

std::vector<GbdtParams> DefaultGrid(std::uint64_t seed) {
  std::vector<GbdtParams> grid;
  for (int leaves : {15, 31, 63}) {
    for (double lr : {0.05, 0.1}) {
      for (int min_leaf : {10, 20}) {
        GbdtParams p;
        p.max_leaves = leaves;
        p.learning_rate = lr;
        p.min_samples_leaf = min_leaf;
        p.num_rounds = 500;
        p.early_stopping_rounds = 25;
        p.seed = seed;
        grid.push_back(p);
      }
    }
  }
  return grid;
}

}  // namespace crowdlift::gbdt
