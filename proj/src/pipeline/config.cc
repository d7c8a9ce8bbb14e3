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

#include "crowdlift/pipeline/config.h"

#include <set>

#include "crowdlift/common/error.h"
#include "crowdlift/common/hash.h"
#include "crowdlift/common/strings.h"

namespace crowdlift::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed, std::string_view where) {
  if (!j.is_object()) throw SchemaError(std::string(where), std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw SchemaError(key, "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

fs::path ResolvePath(const json& value, const fs::path& base_dir, const std::string& key) {
  if (!value.is_string()) throw SchemaError(key, key + " must be a string path");
  fs::path p(value.get<std::string>());
  if (p.is_relative()) p = base_dir / p;
  return p.lexically_normal();
}

template <typename T>
T Get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(key, "bad value for " + key + ": " + e.what());
  }
}

}  // namespace

std::string_view AugmentModeName(AugmentMode mode) {
  switch (mode) {
    case AugmentMode::kCorrectThree:
      return "correct_three";
    case AugmentMode::kAddGratitude:
      return "add_gratitude";
    case AugmentMode::kMinusGratitude:
      return "minus_gratitude";
  }
  return "correct_three";
}

AugmentMode ParseAugmentMode(std::string_view name) {
  for (AugmentMode m :
       {AugmentMode::kCorrectThree, AugmentMode::kAddGratitude, AugmentMode::kMinusGratitude}) {
    if (AugmentModeName(m) == name) return m;
  }
  throw ValidationError("unknown augmentation mode '" + std::string(name) + "'");
}

void StudyConfig::set_seed(std::uint64_t s) {
  seed = s;
  for (auto& p : grid) p.seed = s;
}

void StudyConfig::Validate() const {
  if (corpus_path.empty()) throw ValidationError("corpus.path is required");
  if (resources_dir.empty()) throw ValidationError("resources_dir is required");
  if (acs_path.empty()) throw ValidationError("acs_path is required");
  if (covid_path.empty()) throw ValidationError("covid_path is required");
  if (output_dir.empty()) throw ValidationError("output_dir is required");
  if (grid.empty()) throw ValidationError("gbdt_grid must not be empty");
  for (const auto& p : grid) p.Validate();
  if (workers < 1) throw ValidationError("workers must be at least 1");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ValidationError("threshold must lie in (0, 1)");
  split.Validate();
  llm.Validate();
}

StudyConfig StudyConfig::FromJson(const json& j, const fs::path& base_dir) {
  RejectUnknownKeys(j,
                    {"corpus", "resources_dir", "acs_path", "covid_path", "choices_path",
                     "output_dir", "split", "seed", "gbdt_grid", "llm", "workers",
                     "screen_small_business", "threshold", "simulation"},
                    "study config");
  StudyConfig c;
  if (!j.contains("corpus")) throw SchemaError("corpus", "missing key 'corpus'");
  const json& corpus = j.at("corpus");
  RejectUnknownKeys(corpus, {"path", "format", "donations"}, "corpus");
  if (!corpus.contains("path")) throw SchemaError("corpus.path", "missing key 'corpus.path'");
  c.corpus_path = ResolvePath(corpus.at("path"), base_dir, "corpus.path");
  if (corpus.contains("format")) {
    const auto format = Get<std::string>(corpus, "format");
    if (format == "jsonl") {
      c.corpus_format = corpus::InputFormat::kJsonLines;
    } else if (format == "csv") {
      c.corpus_format = corpus::InputFormat::kCsv;
    } else {
      throw SchemaError("corpus.format", "corpus.format must be 'jsonl' or 'csv'");
    }
  }
  if (corpus.contains("donations")) {
    c.donations_path = ResolvePath(corpus.at("donations"), base_dir, "corpus.donations");
  }
  for (const auto& [key, member] :
       {std::pair{"resources_dir", &StudyConfig::resources_dir},
        std::pair{"acs_path", &StudyConfig::acs_path},
        std::pair{"covid_path", &StudyConfig::covid_path},
        std::pair{"choices_path", &StudyConfig::choices_path},
        std::pair{"output_dir", &StudyConfig::output_dir}}) {
    if (j.contains(key)) c.*member = ResolvePath(j.at(key), base_dir, key);
  }
  if (j.contains("split")) c.split = corpus::SplitSpec::FromJson(j.at("split"));
  if (j.contains("llm")) c.llm = llm::LlmClientConfig::FromJson(j.at("llm"));
  if (!c.llm.cache_dir.empty() && c.llm.cache_dir.is_relative()) {
    c.llm.cache_dir = (base_dir / c.llm.cache_dir).lexically_normal();
  }
  if (j.contains("workers")) c.workers = Get<int>(j, "workers");
  if (j.contains("screen_small_business")) {
    c.screen_small_business = Get<bool>(j, "screen_small_business");
  }
  if (j.contains("threshold")) c.threshold = Get<double>(j, "threshold");
  if (j.contains("gbdt_grid")) {
    const json& grid = j.at("gbdt_grid");
    if (!grid.is_array()) throw SchemaError("gbdt_grid", "gbdt_grid must be an array");
    c.grid.clear();
    for (const auto& entry : grid) {
      if (entry.contains("seed")) {
        throw SchemaError("gbdt_grid.seed", "grid candidates take the study seed; remove 'seed'");
      }
      c.grid.push_back(gbdt::GbdtParams::FromJson(entry));
    }
  }
  if (j.contains("simulation")) {
    const json& sim = j.at("simulation");
    RejectUnknownKeys(sim, {"sample_size", "mode"}, "simulation");
    if (sim.contains("sample_size")) {
      const auto n = Get<std::int64_t>(sim, "sample_size");
      if (n < 0) throw SchemaError("simulation.sample_size", "sample_size must be >= 0");
      c.simulation.sample_size = static_cast<std::size_t>(n);
    }
    if (sim.contains("mode")) c.simulation.mode = ParseAugmentMode(Get<std::string>(sim, "mode"));
  }
  std::uint64_t seed = c.seed;
  if (j.contains("seed")) seed = Get<std::uint64_t>(j, "seed");
  c.set_seed(seed);
  c.Validate();
  return c;
}

StudyConfig StudyConfig::Load(const fs::path& path) {
  std::string text;
  try {
    text = ReadFileToString(path.string());
  } catch (const IoError&) {
    throw ValidationError("cannot read config file " + path.string());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return FromJson(j, fs::absolute(path).parent_path());
}

nlohmann::ordered_json StudyConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["corpus"]["path"] = corpus_path.string();
  j["corpus"]["format"] = corpus_format == corpus::InputFormat::kCsv ? "csv" : "jsonl";
  if (!donations_path.empty()) j["corpus"]["donations"] = donations_path.string();
  j["resources_dir"] = resources_dir.string();
  j["acs_path"] = acs_path.string();
  j["covid_path"] = covid_path.string();
  if (!choices_path.empty()) j["choices_path"] = choices_path.string();
  j["output_dir"] = output_dir.string();
  j["split"] = split.ToJson();
  j["seed"] = seed;
  nlohmann::ordered_json grid_json = nlohmann::ordered_json::array();
  for (const auto& p : grid) {
    auto entry = p.ToJson();
    entry.erase("seed");
    grid_json.push_back(entry);
  }
  j["gbdt_grid"] = grid_json;
  j["llm"] = llm.ToJson();
  j["workers"] = workers;
  j["screen_small_business"] = screen_small_business;
  j["threshold"] = threshold;
  j["simulation"]["sample_size"] = simulation.sample_size;
  j["simulation"]["mode"] = AugmentModeName(simulation.mode);
  return j;
}

std::string StudyConfig::Hash() const {
  // Worker count and output location do not change any result.
  auto j = ToJson();
  j.erase("workers");
  j.erase("output_dir");
  return Sha256Hex(j.dump());
}

}  // namespace crowdlift::pipeline
