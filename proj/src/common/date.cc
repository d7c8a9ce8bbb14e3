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

#include "crowdlift/common/date.h"

#include <charconv>
#include <cstdio>

#include "crowdlift/common/error.h"

namespace crowdlift {
namespace {

bool ParseDigits(std::string_view s, int& out) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}) {
  if (!ymd_.ok()) {
    throw ValidationError("invalid calendar date " + std::to_string(year) + "-" +
                          std::to_string(month) + "-" + std::to_string(day));
  }
}

Date Date::Parse(std::string_view iso) {
  int y = 0, m = 0, d = 0;
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !ParseDigits(iso.substr(0, 4), y) ||
      !ParseDigits(iso.substr(5, 2), m) || !ParseDigits(iso.substr(8, 2), d)) {
    throw ValidationError("expected ISO-8601 date YYYY-MM-DD, got '" + std::string(iso) + "'");
  }
  return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

Date Date::Today() {
  const auto now = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  const std::chrono::year_month_day ymd{now};
  return Date(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day()));
}

std::string Date::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

Date Date::AddDays(int days) const {
  const std::chrono::year_month_day shifted{std::chrono::sys_days{ymd_} +
                                            std::chrono::days{days}};
  return Date(static_cast<int>(shifted.year()), static_cast<unsigned>(shifted.month()),
              static_cast<unsigned>(shifted.day()));
}

int Date::DaysSinceEpoch() const {
  return static_cast<int>(std::chrono::sys_days{ymd_}.time_since_epoch().count());
}

}  // namespace crowdlift
