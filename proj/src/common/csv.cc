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

#include "crowdlift/common/csv.h"

#include <fstream>

#include "crowdlift/common/error.h"

namespace crowdlift::csv {

std::optional<Row> Reader::Next() {
  std::string line;
  while (true) {
    if (!std::getline(in_, line)) return std::nullopt;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  record_line_ = line_;
  Row row;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i == line.size()) {
      if (quoted) {
        // Embedded newline inside a quoted field.
        std::string more;
        if (!std::getline(in_, more)) {
          throw ValidationError("unterminated quoted field starting on line " +
                                std::to_string(record_line_));
        }
        ++line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field.push_back('\n');
        line = std::move(more);
        i = 0;
        continue;
      }
      row.push_back(std::move(field));
      return row;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
    ++i;
  }
}

int Table::Find(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Table ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Reader reader(in);
  Table table;
  auto header = reader.Next();
  if (!header) throw ValidationError(path.string() + ": missing header row");
  table.header = std::move(*header);
  while (auto row = reader.Next()) {
    if (row->size() != table.header.size()) {
      throw ValidationError(path.string() + ":" + std::to_string(reader.line_number()) +
                            ": expected " + std::to_string(table.header.size()) +
                            " fields, got " + std::to_string(row->size()));
    }
    table.rows.push_back(std::move(*row));
    table.line_numbers.push_back(reader.line_number());
  }
  return table;
}

std::string Quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatRow(const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out.push_back(',');
    out += Quote(row[i]);
  }
  return out;
}

}  // namespace crowdlift::csv
