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

#ifndef CROWDLIFT_COMMON_FEATURE_MATRIX_H_
#define CROWDLIFT_COMMON_FEATURE_MATRIX_H_

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crowdlift {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool IsMissing(double v) { return std::isnan(v); }

enum class FeatureGroup { kTextual, kConfiguration, kPandemic, kDemographics };

std::string_view FeatureGroupName(FeatureGroup group);
// Throws ValidationError on an unknown name.
FeatureGroup ParseFeatureGroup(std::string_view name);
inline constexpr FeatureGroup kAllFeatureGroups[] = {
    FeatureGroup::kTextual, FeatureGroup::kConfiguration, FeatureGroup::kPandemic,
    FeatureGroup::kDemographics};

struct FeatureColumn {
  std::string name;
  FeatureGroup group = FeatureGroup::kTextual;

  friend bool operator==(const FeatureColumn&, const FeatureColumn&) = default;
};

// Dense row-major matrix of named, group-tagged columns. Missing cells hold
// kMissing (NaN).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::vector<FeatureColumn> columns);

  std::size_t num_rows() const { return row_ids_.size(); }
  std::size_t num_columns() const { return columns_.size(); }
  const std::vector<FeatureColumn>& columns() const { return columns_; }
  const std::vector<std::string>& row_ids() const { return row_ids_; }

  void AddRow(std::string id, std::span<const double> values);

  double at(std::size_t row, std::size_t col) const { return values_[row * columns_.size() + col]; }
  double& at(std::size_t row, std::size_t col) { return values_[row * columns_.size() + col]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * columns_.size(), columns_.size()};
  }
  std::vector<double> column(std::size_t c) const;

  std::optional<std::size_t> FindColumn(std::string_view name) const;
  // Throws ValidationError when absent.
  std::size_t ColumnIndex(std::string_view name) const;
  std::optional<std::size_t> FindRow(std::string_view id) const;

  FeatureMatrix SelectRows(std::span<const std::size_t> rows) const;
  FeatureMatrix SelectColumns(std::span<const std::size_t> cols) const;

  // Header: id, then column names; a second header line carries group tags.
  // Values use shortest round-trip formatting so reads are exact.
  void WriteCsv(const std::filesystem::path& path) const;
  static FeatureMatrix ReadCsv(const std::filesystem::path& path);

  friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b);

 private:
  std::vector<FeatureColumn> columns_;
  std::vector<std::string> row_ids_;
  std::vector<double> values_;
};

}  // namespace crowdlift

#endif  // CROWDLIFT_COMMON_FEATURE_MATRIX_H_
