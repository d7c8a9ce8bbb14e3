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

#include "crowdlift/context/covid.h"

#include <cmath>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"

namespace crowdlift::context {

void CovidSeries::Add(std::string_view state, const Date& date, double new_cases) {
  if (!(new_cases >= 0) || !std::isfinite(new_cases)) {
    throw SchemaError("new_cases", "new_cases must be a nonnegative count");
  }
  auto& days = series_[std::string(state)];
  if (!days.emplace(date.DaysSinceEpoch(), new_cases).second) {
    throw SchemaError("date", "duplicate COVID row for " + std::string(state) + " on " +
                                  date.ToString());
  }
}

CovidSeries CovidSeries::Load(const std::filesystem::path& path) {
  const csv::Table t = csv::ReadFile(path);
  const int state = t.Find("state");
  const int date = t.Find("date");
  const int cases = t.Find("new_cases");
  if (state < 0 || date < 0 || cases < 0) {
    throw SchemaError("state", path.string() + ": needs state,date,new_cases columns");
  }
  CovidSeries s;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    try {
      s.Add(row.at(state), Date::Parse(row.at(date)), ParseDouble(row.at(cases)));
    } catch (const SchemaError& e) {
      throw SchemaError(e.field(), path.filename().string() + ":" +
                                       std::to_string(t.line_numbers[r]) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw SchemaError("date", path.filename().string() + ":" +
                                    std::to_string(t.line_numbers[r]) + ": " + e.what());
    }
  }
  return s;
}

double CovidSeries::CasesOn(const std::string& state, const Date& day) const {
  auto s = series_.find(state);
  if (s != series_.end()) {
    if (auto d = s->second.find(day.DaysSinceEpoch()); d != s->second.end()) return d->second;
  }
  throw ValidationError("COVID series has no coverage for " + state + " on " + day.ToString());
}

CovidShock CovidSeries::Shock(std::string_view state, const Date& created) const {
  const std::string code(state);
  const std::string national(kNationalCode);
  double local = 0;
  double total = 0;
  for (int back = kCovidWindowDays; back >= 1; --back) {
    const Date day = created.AddDays(-back);
    local += CasesOn(code, day);
    total += CasesOn(national, day);
  }
  return {local, total > 0 ? local / total : 0.0};
}

}  // namespace crowdlift::context
