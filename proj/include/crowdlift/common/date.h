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

#ifndef CROWDLIFT_COMMON_DATE_H_
#define CROWDLIFT_COMMON_DATE_H_

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace crowdlift {

// A calendar date without time zone, serialized as ISO-8601 YYYY-MM-DD.
class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);

  // Throws ValidationError on anything but a valid YYYY-MM-DD string.
  static Date Parse(std::string_view iso);
  static Date Today();

  std::string ToString() const;
  Date AddDays(int days) const;
  int DaysSinceEpoch() const;

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

  friend bool operator==(const Date& a, const Date& b) { return a.ymd_ == b.ymd_; }
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
    return a.DaysSinceEpoch() <=> b.DaysSinceEpoch();
  }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

}  // namespace crowdlift

#endif  // CROWDLIFT_COMMON_DATE_H_
