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

#ifndef CROWDLIFT_PIPELINE_CONFIG_H_
#define CROWDLIFT_PIPELINE_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "crowdlift/corpus/campaign.h"
#include "crowdlift/corpus/split.h"
#include "crowdlift/gbdt/params.h"
#include "crowdlift/llmfeat/client.h"

namespace crowdlift::pipeline {

// Which rewrite the counterfactual simulation applies. kCorrectThree adds
// gratitude, the match-grant notice and urgency; the other two change only
// the gratitude expression.
enum class AugmentMode { kCorrectThree, kAddGratitude, kMinusGratitude };

std::string_view AugmentModeName(AugmentMode mode);
// Throws ValidationError on an unknown name.
AugmentMode ParseAugmentMode(std::string_view name);

struct SimulationSettings {
  // 0 simulates every eligible campaign.
  std::size_t sample_size = 0;
  AugmentMode mode = AugmentMode::kCorrectThree;
};

struct StudyConfig {
  std::filesystem::path corpus_path;
  corpus::InputFormat corpus_format = corpus::InputFormat::kJsonLines;
  // CSV only; empty means the default companion file.
  std::filesystem::path donations_path;
  std::filesystem::path resources_dir;
  std::filesystem::path acs_path;
  std::filesystem::path covid_path;
  // Optional choice records for analyze-experiment.
  std::filesystem::path choices_path;
  std::filesystem::path output_dir;
  corpus::SplitSpec split;
  std::uint64_t seed = 20200122;
  // Every candidate carries `seed`; see set_seed.
  std::vector<gbdt::GbdtParams> grid = gbdt::DefaultGrid(20200122);
  llm::LlmClientConfig llm;
  int workers = 4;
  // Runs the small-business check during ingest and drops ineligible records.
  bool screen_small_business = false;
  double threshold = 0.5;
  SimulationSettings simulation;

  // Replaces the seed everywhere it is used, grid candidates included.
  void set_seed(std::uint64_t seed);

  // Throws ValidationError naming the offending key.
  void Validate() const;

  // Relative paths resolve against `base_dir`. Unknown keys are rejected
  // with SchemaError.
  static StudyConfig FromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
  // Reads a JSON file; relative paths resolve against its directory.
  static StudyConfig Load(const std::filesystem::path& path);
  nlohmann::ordered_json ToJson() const;
  // SHA-256 of the canonical JSON form.
  std::string Hash() const;
};

}  // namespace crowdlift::pipeline

#endif  // CROWDLIFT_PIPELINE_CONFIG_H_
