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

#ifndef CROWDLIFT_COMMON_CSV_H_
#define CROWDLIFT_COMMON_CSV_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crowdlift::csv {

using Row = std::vector<std::string>;

// Comma-separated, double-quote escaped (RFC 4180). Quoted fields may span
// lines; `line_number` reports the line the record started on.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::optional<Row> Next();
  int line_number() const { return record_line_; }

 private:
  std::istream& in_;
  int line_ = 0;
  int record_line_ = 0;
};

// A header-indexed table read fully into memory.
struct Table {
  Row header;
  std::vector<Row> rows;
  std::vector<int> line_numbers;

  // Column index by name, or -1.
  int Find(std::string_view name) const;
};

// Throws IoError when unreadable and ValidationError on ragged rows.
Table ReadFile(const std::filesystem::path& path);

std::string Quote(std::string_view field);
std::string FormatRow(const Row& row);

}  // namespace crowdlift::csv

#endif  // CROWDLIFT_COMMON_CSV_H_
