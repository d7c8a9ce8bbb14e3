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

#ifndef CROWDLIFT_CONTEXT_COVID_H_
#define CROWDLIFT_CONTEXT_COVID_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "crowdlift/common/date.h"

namespace crowdlift::context {

inline constexpr std::string_view kNationalCode = "US";
inline constexpr int kCovidWindowDays = 7;

struct CovidShock {
  double cases_7d = 0;
  double share_of_us = 0;
};

// Daily new cases per state plus the national series (state code "US").
class CovidSeries {
 public:
  // CSV columns state,date,new_cases. Throws SchemaError on negative counts
  // or duplicate (state, date) rows.
  static CovidSeries Load(const std::filesystem::path& path);

  void Add(std::string_view state, const Date& date, double new_cases);

  // Sums over the seven days strictly before `created`. Throws
  // ValidationError naming the first uncovered (state, day).
  CovidShock Shock(std::string_view state, const Date& created) const;

 private:
  double CasesOn(const std::string& state, const Date& day) const;
  std::map<std::string, std::map<int, double>> series_;
};

}  // namespace crowdlift::context

#endif  // CROWDLIFT_CONTEXT_COVID_H_
