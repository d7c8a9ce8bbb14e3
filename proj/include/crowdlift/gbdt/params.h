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

#ifndef CROWDLIFT_GBDT_PARAMS_H_
#define CROWDLIFT_GBDT_PARAMS_H_

#include <cstdint>
#include <vector>

#include "nlohmann/json.hpp"

namespace crowdlift::gbdt {

struct GbdtParams {
  int num_rounds = 500;
  double learning_rate = 0.1;
  int max_leaves = 31;
  int min_samples_leaf = 20;
  int max_bins = 255;
  double feature_fraction = 1.0;
  double bagging_fraction = 1.0;
  double l2_reg = 0.0;
  // 0 disables early stopping.
  int early_stopping_rounds = 25;
  std::uint64_t seed = 0;

  // Throws ValidationError naming the first out-of-range field.
  void Validate() const;

  nlohmann::ordered_json ToJson() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static GbdtParams FromJson(const nlohmann::json& j);

  friend bool operator==(const GbdtParams&, const GbdtParams&) = default;
};

// max_leaves {15,31,63} x learning_rate {0.05,0.1} x min_samples_leaf {10,20},
// 500 rounds with early stopping after 25, all sharing `seed`.
std::vector<GbdtParams> DefaultGrid(std::uint64_t seed);

}  // namespace crowdlift::gbdt

#endif  // CROWDLIFT_GBDT_PARAMS_H_
