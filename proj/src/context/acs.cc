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

#include "crowdlift/context/acs.h"

#include <algorithm>
#include <cmath>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"

namespace crowdlift::context {

const std::array<AcsColumn, kAcsFeatureCount>& AcsColumns() {
  using K = AcsKind;
  static const std::array<AcsColumn, kAcsFeatureCount> kColumns = {{
      {"population_density", "population", K::kCount},
      {"pct_female", "genders", K::kShare},
      {"pct_under_5", "ages", K::kShare},
      {"pct_under_18", "ages", K::kShare},
      {"pct_over_65", "ages", K::kShare},
      {"pct_two_or_more_races", "race", K::kShare},
      {"pct_white_not_hispanic", "race", K::kShare},
      {"pct_asian", "race", K::kShare},
      {"pct_hispanic", "race", K::kShare},
      {"pct_white", "race", K::kShare},
      {"pct_black", "race", K::kShare},
      {"pct_native_hawaiian_pacific", "race", K::kShare},
      {"pct_american_indian_alaska_native", "race", K::kShare},
      {"pct_bachelors", "education", K::kShare},
      {"housing_units", "household", K::kCount},
      {"persons_per_household", "household", K::kCount},
      {"owner_occupied_rate", "household", K::kShare},
      {"households", "household", K::kCount},
      {"pct_same_house_1yr", "household", K::kShare},
      {"pct_households_computer", "household", K::kShare},
      {"pct_households_broadband", "household", K::kShare},
      {"median_gross_rent", "income", K::kCount},
      {"per_capita_income", "income", K::kCount},
      {"median_household_income", "income", K::kCount},
      {"pct_poverty", "income", K::kShare},
      {"median_home_value", "income", K::kCount},
      {"owner_costs_with_mortgage", "income", K::kCount},
      {"owner_costs_without_mortgage", "income", K::kCount},
      {"firms_all", "business", K::kCount},
      {"firms_men_owned", "business", K::kCount},
      {"firms_nonminority_owned", "business", K::kCount},
      {"retail_sales", "business", K::kCount},
      {"retail_sales_per_capita", "business", K::kCount},
      {"health_care_receipts", "business", K::kCount},
      {"transportation_receipts", "business", K::kCount},
      {"employer_establishments", "employment", K::kCount},
      {"annual_payroll", "employment", K::kCount},
      {"pct_change_employment", "employment", K::kSigned},
      {"nonemployer_establishments", "employment", K::kCount},
      {"mean_travel_time", "employment", K::kCount},
      {"pct_civilian_labor_force", "employment", K::kShare},
      {"pct_female_labor_force", "employment", K::kShare},
      {"veterans", "others", K::kCount},
      {"pct_foreign_born", "others", K::kShare},
      {"pct_other_language", "others", K::kShare},
      {"pct_disability_under_65", "others", K::kShare},
  }};
  return kColumns;
}

std::pair<std::string, std::string> AcsTable::Key(std::string_view city, std::string_view state) {
  return {AsciiLower(Trim(city)), AsciiLower(Trim(state))};
}

void AcsTable::Add(std::string_view city, std::string_view state, const AcsRow& row) {
  const auto& cols = AcsColumns();
  for (std::size_t i = 0; i < kAcsFeatureCount; ++i) {
    const double v = row[i];
    if (IsMissing(v)) continue;
    const bool ok = cols[i].kind == AcsKind::kShare   ? (v >= 0 && v <= 100)
                    : cols[i].kind == AcsKind::kCount ? v >= 0
                                                      : std::isfinite(v);
    if (!ok) {
      throw SchemaError(std::string(cols[i].name),
                        std::string(cols[i].name) + " out of range for " + std::string(city) +
                            ", " + std::string(state) + ": " + FormatDouble(v));
    }
  }
  rows_[Key(city, state)] = row;
}

AcsTable AcsTable::Load(const std::filesystem::path& path) {
  const csv::Table t = csv::ReadFile(path);
  const int city = t.Find("city");
  const int state = t.Find("state");
  if (city < 0 || state < 0) throw SchemaError("city", path.string() + ": needs city and state columns");
  std::array<int, kAcsFeatureCount> idx{};
  for (std::size_t i = 0; i < kAcsFeatureCount; ++i) {
    const std::string name(AcsColumns()[i].name);
    idx[i] = t.Find(name);
    if (idx[i] < 0) throw SchemaError(name, path.string() + ": missing ACS column " + name);
  }
  AcsTable table;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    AcsRow values{};
    for (std::size_t i = 0; i < kAcsFeatureCount; ++i) {
      const auto c = static_cast<std::size_t>(idx[i]);
      values[i] = c < row.size() ? ParseDouble(row[c]) : kMissing;
    }
    try {
      table.Add(row[city], row[state], values);
    } catch (const SchemaError& e) {
      throw SchemaError(e.field(), path.filename().string() + ":" +
                                       std::to_string(t.line_numbers[r]) + ": " + e.what());
    }
  }
  return table;
}

bool AcsTable::Contains(std::string_view city, std::string_view state) const {
  return rows_.contains(Key(city, state));
}

AcsRow AcsTable::Join(std::string_view city, std::string_view state) const {
  if (auto it = rows_.find(Key(city, state)); it != rows_.end()) return it->second;
  LogInfo("no ACS row for " + std::string(city) + ", " + std::string(state));
  AcsRow missing;
  missing.fill(kMissing);
  return missing;
}

AcsRow AcsTable::ColumnMedians() const {
  AcsRow out;
  for (std::size_t i = 0; i < kAcsFeatureCount; ++i) {
    std::vector<double> v;
    for (const auto& [key, row] : rows_) {
      if (!IsMissing(row[i])) v.push_back(row[i]);
    }
    if (v.empty()) {
      out[i] = kMissing;
      continue;
    }
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    out[i] = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  }
  return out;
}

}  // namespace crowdlift::context
