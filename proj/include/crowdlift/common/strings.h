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

#ifndef CROWDLIFT_COMMON_STRINGS_H_
#define CROWDLIFT_COMMON_STRINGS_H_

#include <string>
#include <string_view>
#include <vector>

namespace crowdlift {

std::string AsciiLower(std::string_view s);
std::string_view Trim(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
bool StartsWith(std::string_view s, std::string_view prefix);
bool ContainsInsensitive(std::string_view haystack, std::string_view needle);

// Shortest round-trip decimal for finite values, "NA" for NaN.
std::string FormatDouble(double v);
// Fixed-point with `digits` decimals.
std::string FormatFixed(double v, int digits);
// Parses a double; "NA" and the empty string yield NaN. Throws ValidationError.
double ParseDouble(std::string_view s);

std::string ReadFileToString(const std::string& path);
void WriteStringToFile(const std::string& path, std::string_view contents);

}  // namespace crowdlift

#endif  // CROWDLIFT_COMMON_STRINGS_H_
