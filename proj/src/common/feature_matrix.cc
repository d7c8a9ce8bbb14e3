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

#include "crowdlift/common/feature_matrix.h"

#include <cstring>
#include <fstream>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"

namespace crowdlift {

std::string_view FeatureGroupName(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::kTextual: return "textual";
    case FeatureGroup::kConfiguration: return "configuration";
    case FeatureGroup::kPandemic: return "pandemic";
    case FeatureGroup::kDemographics: return "demographics";
  }
  return "unknown";
}

FeatureGroup ParseFeatureGroup(std::string_view name) {
  for (FeatureGroup g : kAllFeatureGroups) {
    if (FeatureGroupName(g) == name) return g;
  }
  throw ValidationError("unknown feature group '" + std::string(name) + "'");
}

FeatureMatrix::FeatureMatrix(std::vector<FeatureColumn> columns) : columns_(std::move(columns)) {}

void FeatureMatrix::AddRow(std::string id, std::span<const double> values) {
  if (values.size() != columns_.size()) {
    throw ValidationError("row '" + id + "' has " + std::to_string(values.size()) +
                          " values, matrix has " + std::to_string(columns_.size()) + " columns");
  }
  row_ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(num_rows());
  for (std::size_t r = 0; r < num_rows(); ++r) out[r] = at(r, c);
  return out;
}

std::optional<std::size_t> FeatureMatrix::FindColumn(std::string_view name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].name == name) return c;
  }
  return std::nullopt;
}

std::size_t FeatureMatrix::ColumnIndex(std::string_view name) const {
  auto c = FindColumn(name);
  if (!c) throw ValidationError("no feature column named '" + std::string(name) + "'");
  return *c;
}

std::optional<std::size_t> FeatureMatrix::FindRow(std::string_view id) const {
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    if (row_ids_[r] == id) return r;
  }
  return std::nullopt;
}

FeatureMatrix FeatureMatrix::SelectRows(std::span<const std::size_t> rows) const {
  FeatureMatrix out(columns_);
  for (std::size_t r : rows) out.AddRow(row_ids_.at(r), row(r));
  return out;
}

FeatureMatrix FeatureMatrix::SelectColumns(std::span<const std::size_t> cols) const {
  std::vector<FeatureColumn> selected;
  for (std::size_t c : cols) selected.push_back(columns_.at(c));
  FeatureMatrix out(std::move(selected));
  std::vector<double> buf(cols.size());
  for (std::size_t r = 0; r < num_rows(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) buf[j] = at(r, cols[j]);
    out.AddRow(row_ids_[r], buf);
  }
  return out;
}

void FeatureMatrix::WriteCsv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  csv::Row header{"id"}, groups{"#group"};
  for (const auto& col : columns_) {
    header.push_back(col.name);
    groups.emplace_back(FeatureGroupName(col.group));
  }
  out << csv::FormatRow(header) << '\n' << csv::FormatRow(groups) << '\n';
  for (std::size_t r = 0; r < num_rows(); ++r) {
    out << csv::Quote(row_ids_[r]);
    for (std::size_t c = 0; c < num_columns(); ++c) out << ',' << FormatDouble(at(r, c));
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

FeatureMatrix FeatureMatrix::ReadCsv(const std::filesystem::path& path) {
  csv::Table table = csv::ReadFile(path);
  if (table.header.empty() || table.header[0] != "id" || table.rows.empty() ||
      table.rows[0].empty() || table.rows[0][0] != "#group") {
    throw ValidationError(path.string() + ": not a feature matrix file");
  }
  std::vector<FeatureColumn> cols;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    cols.push_back({table.header[c], ParseFeatureGroup(table.rows[0][c])});
  }
  FeatureMatrix m(std::move(cols));
  std::vector<double> buf(m.num_columns());
  for (std::size_t r = 1; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < buf.size(); ++c) buf[c] = ParseDouble(table.rows[r][c + 1]);
    m.AddRow(table.rows[r][0], buf);
  }
  return m;
}

bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.columns_ != b.columns_ || a.row_ids_ != b.row_ids_ ||
      a.values_.size() != b.values_.size()) {
    return false;
  }
  // Bitwise, so that missing cells compare equal to each other.
  return a.values_.empty() ||
         std::memcmp(a.values_.data(), b.values_.data(), a.values_.size() * sizeof(double)) == 0;
}

}  // namespace crowdlift
