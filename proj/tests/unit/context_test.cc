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

#include <filesystem>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/context/acs.h"
#include "crowdlift/context/assemble.h"
#include "crowdlift/context/covid.h"
#include "crowdlift/llmfeat/mock_provider.h"

namespace crowdlift::context {
namespace {

CovidSeries ConstantSeries(double state_daily, double national_daily, Date from, int days) {
  CovidSeries s;
  for (int i = 0; i < days; ++i) {
    s.Add("TX", from.AddDays(i), state_daily);
    s.Add("US", from.AddDays(i), national_daily);
  }
  return s;
}

TEST(CovidTest, ConstantCases) {
  const auto s = ConstantSeries(10, 100, Date(2020, 3, 1), 30);
  const auto shock = s.Shock("TX", Date(2020, 3, 15));
  EXPECT_EQ(shock.cases_7d, 70);
  EXPECT_DOUBLE_EQ(shock.share_of_us, 0.1);
  const auto zero = ConstantSeries(0, 0, Date(2020, 3, 1), 30).Shock("TX", Date(2020, 3, 15));
  EXPECT_EQ(zero.cases_7d, 0);
  EXPECT_EQ(zero.share_of_us, 0);
}

TEST(CovidTest, WindowIsSevenDaysStrictlyBefore) {
  CovidSeries s;
  for (int i = 0; i < 20; ++i) {
    s.Add("TX", Date(2020, 3, 1).AddDays(i), i);
    s.Add("US", Date(2020, 3, 1).AddDays(i), 100);
  }
  // Created 2020-03-11 -> days 3..9 (values 3..9).
  EXPECT_EQ(s.Shock("TX", Date(2020, 3, 11)).cases_7d, 3 + 4 + 5 + 6 + 7 + 8 + 9);
}

TEST(CovidTest, MissingDayIsCoverageError) {
  CovidSeries s;
  for (int i = 0; i < 14; ++i) {
    if (i == 10) continue;
    s.Add("TX", Date(2020, 3, 1).AddDays(i), 5);
    s.Add("US", Date(2020, 3, 1).AddDays(i), 50);
  }
  EXPECT_THROW(s.Shock("TX", Date(2020, 3, 14)), ValidationError);
  EXPECT_THROW(s.Shock("CA", Date(2020, 3, 9)), ValidationError);
  EXPECT_NO_THROW(s.Shock("TX", Date(2020, 3, 9)));
}

TEST(CovidTest, DoublingCountsDoublesCasesKeepsShare) {
  CovidSeries a;
  CovidSeries b;
  for (int i = 0; i < 14; ++i) {
    const double local = 3 + i * 7 % 11;
    const double national = 100 + i * 13 % 17;
    a.Add("TX", Date(2020, 6, 1).AddDays(i), local);
    a.Add("US", Date(2020, 6, 1).AddDays(i), national);
    b.Add("TX", Date(2020, 6, 1).AddDays(i), 2 * local);
    b.Add("US", Date(2020, 6, 1).AddDays(i), 2 * national);
  }
  const auto sa = a.Shock("TX", Date(2020, 6, 12));
  const auto sb = b.Shock("TX", Date(2020, 6, 12));
  EXPECT_EQ(sb.cases_7d, 2 * sa.cases_7d);
  EXPECT_DOUBLE_EQ(sb.share_of_us, sa.share_of_us);
}

TEST(CovidTest, RejectsNegativeAndDuplicateRows) {
  CovidSeries s;
  EXPECT_THROW(s.Add("TX", Date(2020, 1, 1), -1), SchemaError);
  s.Add("TX", Date(2020, 1, 1), 1);
  EXPECT_THROW(s.Add("TX", Date(2020, 1, 1), 2), SchemaError);
}

AcsRow RowOf(double v) {
  AcsRow r;
  r.fill(v);
  return r;
}

TEST(AcsTest, JoinIsCaseFoldedAndMissingOtherwise) {
  EXPECT_EQ(AcsColumns().size(), 46u);
  AcsTable t;
  t.Add("Austin", "TX", RowOf(12));
  EXPECT_EQ(t.Join("austin", "tx")[0], 12);
  EXPECT_EQ(t.Join("AUSTIN ", "TX")[45], 12);
  const auto miss = t.Join("Nowhere", "TX");
  for (double v : miss) EXPECT_TRUE(IsMissing(v));
}

TEST(AcsTest, RangeChecksByKind) {
  AcsTable t;
  AcsRow bad_share = RowOf(1);
  bad_share[1] = 120;  // pct_female
  EXPECT_THROW(t.Add("A", "TX", bad_share), SchemaError);
  AcsRow negative_change = RowOf(1);
  std::size_t change = 0;
  for (std::size_t i = 0; i < AcsColumns().size(); ++i) {
    if (AcsColumns()[i].name == "pct_change_employment") change = i;
  }
  negative_change[change] = -4.5;
  EXPECT_NO_THROW(t.Add("A", "TX", negative_change));
  AcsRow negative_count = RowOf(1);
  negative_count[0] = -1;
  EXPECT_THROW(t.Add("B", "TX", negative_count), SchemaError);
}

TEST(AcsTest, LoadsBundledMiniCorpusTable) {
  const auto t = AcsTable::Load(std::string(CROWDLIFT_DATA_DIR) + "/minicorpus/acs.csv");
  EXPECT_GT(t.size(), 5u);
}

TEST(ColumnsTest, GroupCardinalities) {
  const auto& cols = CanonicalColumns();
  ASSERT_EQ(cols.size(), kTotalFeatureCount);
  std::map<FeatureGroup, int> counts;
  for (const auto& c : cols) ++counts[c.group];
  EXPECT_EQ(counts[FeatureGroup::kTextual], 116);
  EXPECT_EQ(counts[FeatureGroup::kConfiguration], 4);
  EXPECT_EQ(counts[FeatureGroup::kPandemic], 2);
  EXPECT_EQ(counts[FeatureGroup::kDemographics], 46);
  std::set<std::string> names;
  for (const auto& c : cols) EXPECT_TRUE(names.insert(c.name).second) << c.name;
}

class AssembleTest : public ::testing::Test {
 protected:
  AssembleTest()
      : resources_(text::TextResources::LoadFromDirectory(CROWDLIFT_RESOURCE_DIR)),
        covid_(ConstantSeries(10, 100, Date(2020, 1, 1), 120)) {
    acs_.Add("Austin", "TX", RowOf(3));
    for (int i = 0; i < 3; ++i) {
      corpus::CampaignRecord r;
      r.id = "c" + std::to_string(i);
      r.description = i == 1 ? "We thank you. Please help our cafe pay rent."
                             : "Our shop has served Austin for 10 years. Staff need help!";
      r.created_date = Date(2020, 3, 10 + i);
      r.city = i == 2 ? "Unknown" : "Austin";
      r.state = "TX";
      r.goal_amount = 1000 * (i + 1);
      r.organizer_male = i % 2 == 0;
      records_.push_back(r);
    }
  }

  FeatureMatrix Build() {
    llm::LlmClientConfig cfg;
    llm::LlmClient client(cfg, std::make_unique<llm::MockProvider>());
    return AssembleFeatureMatrix(records_, resources_, client, acs_, covid_, 3);
  }

  text::TextResources resources_;
  CovidSeries covid_;
  AcsTable acs_;
  std::vector<corpus::CampaignRecord> records_;
};

TEST_F(AssembleTest, ShapeValuesAndMissingPropagation) {
  const FeatureMatrix m = Build();
  EXPECT_EQ(m.num_rows(), 3u);
  EXPECT_EQ(m.num_columns(), 168u);
  EXPECT_EQ(m.columns(), CanonicalColumns());
  EXPECT_EQ(m.row_ids(), (std::vector<std::string>{"c0", "c1", "c2"}));
  EXPECT_EQ(m.at(1, m.ColumnIndex("goal_amount")), 2000);
  EXPECT_EQ(m.at(0, m.ColumnIndex("organizer_male")), 1);
  EXPECT_EQ(m.at(1, m.ColumnIndex("rent_mentioned")), 1);
  EXPECT_EQ(m.at(1, m.ColumnIndex("gratitude_expressed")), 1);
  EXPECT_EQ(m.at(0, m.ColumnIndex("employees_mentioned")), 1);
  EXPECT_EQ(m.at(0, m.ColumnIndex("covid_cases_7d")), 70);
  EXPECT_EQ(m.at(0, m.ColumnIndex("pct_bachelors")), 3);
  for (std::size_t c = 168 - 46; c < 168; ++c) EXPECT_TRUE(IsMissing(m.at(2, c)));
  for (std::size_t c = 0; c < 168 - 46; ++c) EXPECT_FALSE(IsMissing(m.at(2, c)));
}

TEST_F(AssembleTest, DeterministicCsvBytes) {
  const auto dir = std::filesystem::temp_directory_path();
  Build().WriteCsv(dir / "crowdlift_a.csv");
  Build().WriteCsv(dir / "crowdlift_b.csv");
  EXPECT_EQ(ReadFileToString((dir / "crowdlift_a.csv").string()),
            ReadFileToString((dir / "crowdlift_b.csv").string()));
}

TEST_F(AssembleTest, ErrorsCarryCampaignId) {
  records_[1].description = "";
  try {
    Build();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("campaign c1"), std::string::npos);
  }
  records_[1].description = "Fine text. Really.";
  records_[1].created_date = Date(2019, 1, 1);
  EXPECT_THROW(Build(), ValidationError);
}

}  // namespace
}  // namespace crowdlift::context
