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

#include "crowdlift/service/service.h"

#include <algorithm>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/context/assemble.h"
#include "crowdlift/llmfeat/augment.h"

namespace crowdlift::service {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kChecklist[] = {"gratitude_expressed", "urgency_explained",
                                      "match_grant_mentioned"};

template <typename T>
T Required(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T Optional(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return Required<T>(j, key);
}

Response JsonResponse(int status, const ordered_json& body) {
  return {status, body.dump() + "\n", {}};
}

Response Unavailable(const Snapshot& snap) {
  json detail;
  for (const auto& [name, state] : snap.status) detail[name] = state;
  return ScoringService::ErrorResponse(503, "model_unavailable",
                                       "the model or text resources are not loaded", detail);
}

}  // namespace

DraftRequest DraftRequest::FromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("request body must be a JSON object");
  DraftRequest d;
  d.description = Required<std::string>(j, "description");
  if (Trim(d.description).empty()) throw ValidationError("description must not be empty");
  d.goal_amount = Required<double>(j, "goal_amount");
  if (!(d.goal_amount > 0.0)) throw ValidationError("goal_amount must be positive");
  d.organizer_male = Optional<bool>(j, "organizer_male", false);
  d.has_beneficiary = Optional<bool>(j, "has_beneficiary", false);
  d.gofundme_organized = Optional<bool>(j, "gofundme_organized", false);
  d.city = Optional<std::string>(j, "city", "");
  d.state = Optional<std::string>(j, "state", "");
  const std::string date = Optional<std::string>(j, "created_date", "");
  if (!date.empty()) d.created_date = Date::Parse(date);
  return d;
}

corpus::CampaignRecord DraftRequest::ToRecord() const {
  corpus::CampaignRecord r;
  r.id = "draft";
  r.description = description;
  r.goal_amount = goal_amount;
  r.organizer_male = organizer_male;
  r.has_beneficiary = has_beneficiary;
  r.gofundme_organized = gofundme_organized;
  r.city = city;
  r.state = state;
  r.created_date = created_date.value_or(Date::Today());
  return r;
}

ordered_json Diagnosis::ToJson() const {
  ordered_json j;
  j["predicted_probability"] = probability;
  ordered_json check;
  for (const char* key : kChecklist) check[key] = checklist.at(key);
  j["checklist"] = check;
  j["top_features"] = ordered_json::array();
  for (const auto& f : top_features) {
    j["top_features"].push_back({{"feature", f.feature}, {"gain_share", f.share}});
  }
  j["lexical"] = {{"word_count", word_count}, {"fk_grade", fk_grade}, {"contains_spam", contains_spam}};
  return j;
}

std::shared_ptr<const Snapshot> Snapshot::Load(const ServiceConfig& config) {
  auto snap = std::make_shared<Snapshot>();
  auto attempt = [&](const std::string& name, auto&& load) {
    try {
      load();
      snap->status[name] = "ok";
    } catch (const std::exception& e) {
      snap->status[name] = e.what();
      LogWarning("service: " + name + " unavailable: " + e.what());
    }
  };
  attempt("model", [&] {
    auto model = std::make_shared<gbdt::GbdtModel>(gbdt::GbdtModel::Load(config.model_path));
    if (model->columns() != context::CanonicalColumns()) {
      throw ValidationError("model does not use the canonical 168-feature layout");
    }
    if (model->trees().empty()) {
      for (const auto& c : model->columns()) snap->importance.push_back({c.name, 0.0});
    } else {
      snap->importance = model->GainImportance();
    }
    std::stable_sort(snap->importance.begin(), snap->importance.end(),
                     [](const auto& a, const auto& b) { return a.share > b.share; });
    snap->model = std::move(model);
  });
  if (!config.model_meta_path.empty()) {
    attempt("model_meta", [&] {
      snap->model_meta = json::parse(ReadFileToString(config.model_meta_path.string()));
    });
  }
  attempt("resources", [&] {
    snap->resources = text::TextResources::LoadFromDirectory(config.resources_dir);
  });
  attempt("acs", [&] { snap->acs = context::AcsTable::Load(config.acs_path); });
  attempt("covid", [&] { snap->covid = context::CovidSeries::Load(config.covid_path); });
  return snap;
}

ScoringService::ScoringService(ServiceConfig config, std::unique_ptr<llm::LlmClient> client)
    : config_(std::move(config)), client_(std::move(client)) {
  Reload();
}

void ScoringService::Reload() {
  auto next = Snapshot::Load(config_);
  std::lock_guard<std::mutex> lock(mu_);
  snapshot_ = std::move(next);
}

std::shared_ptr<const Snapshot> ScoringService::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return snapshot_;
}

Response ScoringService::ErrorResponse(int status, std::string_view code, std::string_view message,
                                       const json& detail) {
  ordered_json body;
  body["code"] = code;
  body["message"] = message;
  body["detail"] = detail;
  return JsonResponse(status, body);
}

Diagnosis ScoringService::Diagnose(const DraftRequest& draft, const Snapshot& snap,
                                   std::vector<double>* row_out) {
  const auto& columns = context::CanonicalColumns();
  const std::vector<double> row =
      context::AssembleRow(draft.ToRecord(), *snap.resources, *client_, snap.acs, snap.covid,
                           context::Coverage::kLenient);
  auto value = [&](std::string_view name) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].name == name) return row[c];
    }
    throw ValidationError("unknown feature " + std::string(name));
  };
  Diagnosis d;
  d.probability = snap.model->PredictProba(row);
  for (const char* key : kChecklist) d.checklist[key] = value(key) == 1.0;
  const std::size_t top = std::min(config_.top_features, snap.importance.size());
  d.top_features.assign(snap.importance.begin(), snap.importance.begin() + static_cast<std::ptrdiff_t>(top));
  d.word_count = value("word_count");
  d.fk_grade = value("fk_grade");
  d.contains_spam = value("contains_spam") == 1.0;
  if (row_out) *row_out = row;
  return d;
}

Response ScoringService::Score(std::string_view body) {
  const auto snap = snapshot();
  if (!snap->ready()) return Unavailable(*snap);
  try {
    const DraftRequest draft = DraftRequest::FromJson(json::parse(body));
    return JsonResponse(200, Diagnose(draft, *snap).ToJson());
  } catch (const json::parse_error& e) {
    return ErrorResponse(400, "invalid_json", "request body is not valid JSON", {{"parser", e.what()}});
  } catch (const ProviderError& e) {
    Response r = ErrorResponse(502, "provider_error", e.what(),
                               {{"retry_after_seconds", kRetryAfterSeconds}});
    r.headers["Retry-After"] = std::to_string(kRetryAfterSeconds);
    return r;
  } catch (const ValidationError& e) {
    return ErrorResponse(400, "invalid_request", e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, "internal_error", e.what());
  }
}

Response ScoringService::Augment(std::string_view body) {
  const auto snap = snapshot();
  if (!snap->ready()) return Unavailable(*snap);
  try {
    const DraftRequest draft = DraftRequest::FromJson(json::parse(body));
    const Diagnosis before = Diagnose(draft, *snap);
    DraftRequest rewritten = draft;
    rewritten.description = llm::AugmentThree(draft.description, *client_).correct_three;
    const Diagnosis after = Diagnose(rewritten, *snap);
    ordered_json out;
    out["augmented_text"] = rewritten.description;
    out["before"] = before.ToJson();
    out["after"] = after.ToJson();
    out["lift"] = after.probability - before.probability;
    return JsonResponse(200, out);
  } catch (const json::parse_error& e) {
    return ErrorResponse(400, "invalid_json", "request body is not valid JSON", {{"parser", e.what()}});
  } catch (const llm::RewriteViolationError& e) {
    return ErrorResponse(422, "prefix_violation", e.what(), {{"raw_output", e.raw_output()}});
  } catch (const ProviderError& e) {
    Response r = ErrorResponse(502, "provider_error", e.what(),
                               {{"retry_after_seconds", kRetryAfterSeconds}});
    r.headers["Retry-After"] = std::to_string(kRetryAfterSeconds);
    return r;
  } catch (const ValidationError& e) {
    return ErrorResponse(400, "invalid_request", e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, "internal_error", e.what());
  }
}

Response ScoringService::ModelInfo() const {
  const auto snap = snapshot();
  if (!snap->model) return Unavailable(*snap);
  const auto groups = gbdt::GroupImportance(snap->importance, snap->model->columns());
  ordered_json out;
  out["feature_count"] = snap->model->num_features();
  ordered_json shares;
  for (const auto& [group, share] : groups) shares[std::string(FeatureGroupName(group))] = share;
  out["group_importance"] = shares;
  out["num_trees"] = snap->model->trees().size();
  out["base_score"] = snap->model->base_score();
  out["config_hash"] = snap->model_meta.is_object() ? snap->model_meta.value("config_hash", json())
                                                     : json();
  out["training"] = snap->model_meta.is_null() ? json::object() : snap->model_meta;
  return JsonResponse(200, out);
}

Response ScoringService::Healthz() const {
  const auto snap = snapshot();
  ordered_json out;
  out["status"] = "alive";
  out["degraded"] = !snap->ready();
  ordered_json resources;
  for (const auto& [name, state] : snap->status) resources[name] = state;
  out["resources"] = resources;
  return JsonResponse(200, out);
}

}  // namespace crowdlift::service
