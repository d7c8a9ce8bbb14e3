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

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/date.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/common/hash.h"
#include "crowdlift/common/parallel.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"

namespace crowdlift {
namespace {

TEST(DateTest, ParsesAndFormats) {
  const Date d = Date::Parse("2020-03-01");
  EXPECT_EQ(d.ToString(), "2020-03-01");
  EXPECT_EQ(d.AddDays(-1).ToString(), "2020-02-29");
  EXPECT_LT(d, d.AddDays(1));
  EXPECT_THROW(Date::Parse("2020-02-30"), ValidationError);
  EXPECT_THROW(Date::Parse("03/01/2020"), ValidationError);
}

TEST(HashTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CsvTest, QuotedMultilineFields) {
  std::istringstream in("a,b\n\"x, y\",\"line1\nline2\"\n\"he said \"\"hi\"\"\",3\n");
  csv::Reader reader(in);
  auto header = reader.Next();
  ASSERT_TRUE(header);
  auto r1 = reader.Next();
  ASSERT_TRUE(r1);
  EXPECT_EQ((*r1)[0], "x, y");
  EXPECT_EQ((*r1)[1], "line1\nline2");
  auto r2 = reader.Next();
  ASSERT_TRUE(r2);
  EXPECT_EQ((*r2)[0], "he said \"hi\"");
  EXPECT_EQ(reader.line_number(), 4);
  EXPECT_FALSE(reader.Next());
  EXPECT_EQ(csv::Quote("a,b"), "\"a,b\"");
}

TEST(RandomTest, DeterministicAndInRange) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.Below(5), 5u);
  }
  const auto sample = r.SampleWithoutReplacement(10, 4);
  EXPECT_EQ(std::set<std::size_t>(sample.begin(), sample.end()).size(), 4u);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
}

TEST(StringsTest, DoubleRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(std::nan("")), "NA");
  EXPECT_TRUE(std::isnan(ParseDouble("NA")));
  EXPECT_EQ(ParseDouble(FormatDouble(1.0 / 3)), 1.0 / 3);
  EXPECT_THROW(ParseDouble("abc"), ValidationError);
}

TEST(FeatureMatrixTest, CsvRoundTripIsBitExact) {
  FeatureMatrix m({{"a", FeatureGroup::kTextual}, {"b", FeatureGroup::kDemographics}});
  const double r1[] = {1.0 / 3, kMissing};
  const double r2[] = {-2.5e-300, 7};
  m.AddRow("c1", r1);
  m.AddRow("c2", r2);
  const auto path = std::filesystem::temp_directory_path() / "crowdlift_fm_test.csv";
  m.WriteCsv(path);
  const FeatureMatrix back = FeatureMatrix::ReadCsv(path);
  EXPECT_TRUE(back == m);
  EXPECT_EQ(back.columns()[1].group, FeatureGroup::kDemographics);
  EXPECT_TRUE(IsMissing(back.at(0, 1)));
  std::filesystem::remove(path);
}

TEST(ParallelTest, OrderedResultsAndErrorPropagation) {
  const auto out = OrderedParallelMap<int>(100, 4, [](std::size_t i) { return int(i * i); });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[i], i * i);
  EXPECT_THROW(OrderedParallelMap<int>(10, 3,
                                       [](std::size_t i) -> int {
                                         if (i == 5) throw IoError("boom");
                                         return 0;
                                       }),
               IoError);
}

}  // namespace
}  // namespace crowdlift
