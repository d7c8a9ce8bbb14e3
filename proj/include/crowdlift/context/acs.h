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

#ifndef CROWDLIFT_CONTEXT_ACS_H_
#define CROWDLIFT_CONTEXT_ACS_H_

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crowdlift::context {

inline constexpr std::size_t kAcsFeatureCount = 46;

enum class AcsKind {
  kShare,   // percentage in [0, 100]
  kCount,   // nonnegative level (counts, dollars, minutes, densities)
  kSigned,  // percentage change, any sign
};

struct AcsColumn {
  std::string_view name;
  std::string_view group;
  AcsKind kind;
};

// Canonical demographic columns in matrix order.
const std::array<AcsColumn, kAcsFeatureCount>& AcsColumns();

using AcsRow = std::array<double, kAcsFeatureCount>;

// Demographics keyed by case-folded (city, state).
class AcsTable {
 public:
  // CSV with a header holding city, state and every canonical column (any
  // order, extra columns ignored). Empty or "NA" cells become missing.
  // Throws SchemaError for a missing column or an out-of-range value.
  static AcsTable Load(const std::filesystem::path& path);

  // Throws SchemaError if a value violates its column kind.
  void Add(std::string_view city, std::string_view state, const AcsRow& row);

  // The row for (city, state), or all-missing markers (the miss is logged).
  AcsRow Join(std::string_view city, std::string_view state) const;
  bool Contains(std::string_view city, std::string_view state) const;
  std::size_t size() const { return rows_.size(); }

  // Column-wise medians over rows, ignoring missing cells.
  AcsRow ColumnMedians() const;

 private:
  static std::pair<std::string, std::string> Key(std::string_view city, std::string_view state);
  std::map<std::pair<std::string, std::string>, AcsRow> rows_;
};

}  // namespace crowdlift::context

#endif  // CROWDLIFT_CONTEXT_ACS_H_
