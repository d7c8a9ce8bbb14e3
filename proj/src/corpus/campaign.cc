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

#include "crowdlift/corpus/campaign.h"

#include <fstream>
#include <map>
#include <set>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"

namespace crowdlift::corpus {
namespace {

std::string OptionalString(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || j[field].is_null()) return {};
  if (!j[field].is_string()) throw SchemaError(field, std::string(field) + " must be a string");
  return j[field].get<std::string>();
}

bool RequireFlag(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw SchemaError(field, std::string("missing required field ") + field);
  const auto& v = j[field];
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) return v.get<int>() == 1;
  throw SchemaError(field, std::string(field) + " must be a boolean");
}

bool ParseFlagText(std::string_view text, const char* field) {
  const std::string t = AsciiLower(Trim(text));
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw SchemaError(field, std::string(field) + " must be true/false, got '" + t + "'");
}

void CheckGoal(double goal) {
  if (!(goal > 0)) {
    throw SchemaError("goal_amount", "goal_amount must be positive, got " + FormatDouble(goal));
  }
}

void CheckState(const std::string& state) {
  if (state.empty()) return;
  if (state.size() != 2 || !std::isupper(static_cast<unsigned char>(state[0])) ||
      !std::isupper(static_cast<unsigned char>(state[1]))) {
    throw SchemaError("state", "state must be a two-letter code, got '" + state + "'");
  }
}

Donation DonationFrom(std::string timestamp, double amount) {
  if (!(amount > 0)) {
    throw SchemaError("donations", "donation amounts must be positive, got " + FormatDouble(amount));
  }
  return {std::move(timestamp), amount};
}

void Finish(CampaignRecord& r, std::optional<bool> stated_funded) {
  r.funded = DeriveFunded(r.donations);
  if (stated_funded && *stated_funded != r.funded) {
    throw SchemaError("funded", "funded disagrees with the donations list");
  }
}

void RejectDuplicate(std::set<std::string>& seen, const std::string& id) {
  if (!seen.insert(id).second) throw SchemaError("id", "duplicate campaign id '" + id + "'");
}

template <typename Fn>
auto AtLine(const std::filesystem::path& path, int line, Fn fn) {
  try {
    return fn();
  } catch (const SchemaError& e) {
    throw SchemaError(e.field(),
                      path.filename().string() + ":" + std::to_string(line) + ": " + e.what());
  } catch (const ValidationError& e) {
    throw SchemaError("<row>",
                      path.filename().string() + ":" + std::to_string(line) + ": " + e.what());
  }
}

std::vector<CampaignRecord> LoadJsonLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read campaigns from " + path.string());
  std::vector<CampaignRecord> out;
  std::set<std::string> seen;
  int line_number = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_number;
    if (Trim(line).empty()) continue;
    out.push_back(AtLine(path, line_number, [&] {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("<row>", std::string("invalid JSON: ") + e.what());
      }
      CampaignRecord r = CampaignFromJson(j);
      RejectDuplicate(seen, r.id);
      return r;
    }));
  }
  return out;
}

std::string Cell(const csv::Table& t, const csv::Row& row, const char* name, bool required) {
  const int idx = t.Find(name);
  if (idx < 0) {
    if (required) throw SchemaError(name, std::string("missing required column ") + name);
    return {};
  }
  return static_cast<std::size_t>(idx) < row.size() ? row[idx] : std::string();
}

std::vector<CampaignRecord> LoadCsv(const std::filesystem::path& path,
                                    std::filesystem::path donations_path) {
  const csv::Table table = csv::ReadFile(path);
  std::map<std::string, std::vector<Donation>> donations;
  if (donations_path.empty()) {
    auto sibling = path;
    sibling.replace_extension();
    sibling += ".donations.csv";
    if (std::filesystem::exists(sibling)) donations_path = sibling;
  }
  if (!donations_path.empty()) {
    const csv::Table d = csv::ReadFile(donations_path);
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      AtLine(donations_path, d.line_numbers[i], [&] {
        const std::string id = Cell(d, d.rows[i], "id", true);
        donations[id].push_back(DonationFrom(Cell(d, d.rows[i], "timestamp", true),
                                             ParseDouble(Cell(d, d.rows[i], "amount", true))));
        return 0;
      });
    }
  }
  std::vector<CampaignRecord> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const csv::Row& row = table.rows[i];
    out.push_back(AtLine(path, table.line_numbers[i], [&] {
      CampaignRecord r;
      r.id = Cell(table, row, "id", true);
      if (r.id.empty()) throw SchemaError("id", "id must be nonempty");
      RejectDuplicate(seen, r.id);
      r.title = Cell(table, row, "title", false);
      r.description = Cell(table, row, "description", false);
      const std::string date = Cell(table, row, "created_date", false);
      if (!Trim(date).empty()) r.created_date = Date::Parse(Trim(date));
      r.city = Cell(table, row, "city", false);
      r.state = Cell(table, row, "state", false);
      CheckState(r.state);
      const std::string county = Cell(table, row, "county", false);
      if (!county.empty()) r.county = county;
      const std::string goal = Cell(table, row, "goal_amount", true);
      r.goal_amount = Trim(goal).empty() ? 0.0 : ParseDouble(goal);
      CheckGoal(r.goal_amount);
      r.organizer_male = ParseFlagText(Cell(table, row, "organizer_male", true), "organizer_male");
      r.has_beneficiary =
          ParseFlagText(Cell(table, row, "has_beneficiary", true), "has_beneficiary");
      r.gofundme_organized =
          ParseFlagText(Cell(table, row, "gofundme_organized", true), "gofundme_organized");
      if (auto it = donations.find(r.id); it != donations.end()) r.donations = it->second;
      const std::string funded = Cell(table, row, "funded", false);
      Finish(r, Trim(funded).empty() ? std::nullopt
                                     : std::optional<bool>(ParseFlagText(funded, "funded")));
      return r;
    }));
  }
  return out;
}

}  // namespace

CampaignRecord CampaignFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("<row>", "campaign must be a JSON object");
  CampaignRecord r;
  if (!j.contains("id")) throw SchemaError("id", "missing required field id");
  if (j["id"].is_string()) {
    r.id = j["id"].get<std::string>();
  } else if (j["id"].is_number_integer()) {
    r.id = std::to_string(j["id"].get<long long>());
  } else {
    throw SchemaError("id", "id must be a string");
  }
  if (r.id.empty()) throw SchemaError("id", "id must be nonempty");
  r.title = OptionalString(j, "title");
  r.description = OptionalString(j, "description");
  const std::string date = OptionalString(j, "created_date");
  if (!date.empty()) {
    try {
      r.created_date = Date::Parse(date);
    } catch (const ValidationError& e) {
      throw SchemaError("created_date", e.what());
    }
  }
  r.city = OptionalString(j, "city");
  r.state = OptionalString(j, "state");
  CheckState(r.state);
  const std::string county = OptionalString(j, "county");
  if (!county.empty()) r.county = county;
  if (!j.contains("goal_amount")) throw SchemaError("goal_amount", "missing required field goal_amount");
  if (!j["goal_amount"].is_number()) throw SchemaError("goal_amount", "goal_amount must be a number");
  r.goal_amount = j["goal_amount"].get<double>();
  CheckGoal(r.goal_amount);
  r.organizer_male = RequireFlag(j, "organizer_male");
  r.has_beneficiary = RequireFlag(j, "has_beneficiary");
  r.gofundme_organized = RequireFlag(j, "gofundme_organized");
  if (!j.contains("donations") || !j["donations"].is_array()) {
    throw SchemaError("donations", "donations must be a list");
  }
  for (const auto& d : j["donations"]) {
    if (!d.is_object() || !d.contains("amount") || !d["amount"].is_number()) {
      throw SchemaError("donations", "each donation needs a numeric amount");
    }
    r.donations.push_back(DonationFrom(d.value("timestamp", std::string()), d["amount"].get<double>()));
  }
  std::optional<bool> stated;
  if (j.contains("funded") && !j["funded"].is_null()) stated = RequireFlag(j, "funded");
  Finish(r, stated);
  return r;
}

nlohmann::ordered_json CampaignToJson(const CampaignRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["description"] = r.description;
  j["created_date"] = r.created_date ? nlohmann::ordered_json(r.created_date->ToString())
                                     : nlohmann::ordered_json(nullptr);
  j["city"] = r.city;
  j["state"] = r.state;
  j["county"] = r.county ? nlohmann::ordered_json(*r.county) : nlohmann::ordered_json(nullptr);
  j["goal_amount"] = r.goal_amount;
  j["organizer_male"] = r.organizer_male;
  j["has_beneficiary"] = r.has_beneficiary;
  j["gofundme_organized"] = r.gofundme_organized;
  auto donations = nlohmann::ordered_json::array();
  for (const auto& d : r.donations) {
    donations.push_back({{"timestamp", d.timestamp}, {"amount", d.amount}});
  }
  j["donations"] = std::move(donations);
  j["funded"] = r.funded;
  return j;
}

std::vector<CampaignRecord> LoadCampaigns(const std::filesystem::path& path, InputFormat format,
                                          const std::filesystem::path& donations_path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError("campaign file not found: " + path.string());
  }
  return format == InputFormat::kJsonLines ? LoadJsonLines(path) : LoadCsv(path, donations_path);
}

void WriteCampaigns(const std::filesystem::path& path, const std::vector<CampaignRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += CampaignToJson(r).dump();
    out.push_back('\n');
  }
  WriteStringToFile(path.string(), out);
}

FilterResult FilterBlank(std::vector<CampaignRecord> records) {
  FilterResult result;
  for (auto& r : records) {
    const bool blank = Trim(r.description).empty() || Trim(r.city).empty() ||
                       Trim(r.state).empty() || !r.created_date.has_value();
    if (blank) {
      ++result.removed;
    } else {
      result.kept.push_back(std::move(r));
    }
  }
  if (result.removed > 0) {
    LogInfo("removed " + std::to_string(result.removed) + " blank campaigns");
  }
  return result;
}

}  // namespace crowdlift::corpus
