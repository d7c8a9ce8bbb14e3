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

#ifndef CROWDLIFT_TESTS_SUPPORT_GOLDEN_TEXT_H_
#define CROWDLIFT_TESTS_SUPPORT_GOLDEN_TEXT_H_

#include <fstream>
#include <map>
#include <string>

#include "crowdlift/common/strings.h"

namespace crowdlift::testing {

// Fixture paragraphs whose lexicon vectors are frozen in
// tests/data/lexicon_golden.tsv (see tests/oracle/lexicon_golden.py).
inline const std::map<std::string, std::string>& GoldenFixtures() {
  static const std::map<std::string, std::string> fixtures = {
      {"bakery",
       "Maria’s Bakery has served our neighborhood since 2009. We thank you for every loaf "
       "you've bought! Dr. Lopez, our first customer, still visits each week. The pandemic "
       "closed our doors for three months, and we're struggling to pay rent and keep our 6 "
       "employees. Can you help? Every donation of $25 or more gets a thank-you gift card. We "
       "are deeply grateful and hopeful for the future."},
      {"thanks", "We thank you."}};
  return fixtures;
}

// fixture -> feature -> value.
inline std::map<std::string, std::map<std::string, double>> LoadGoldenVectors(const std::string& path) {
  std::ifstream in(path);
  std::map<std::string, std::map<std::string, double>> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = Split(line, '\t');
    out[f[0]][f[1]] = std::stod(f[2]);
  }
  return out;
}

}  // namespace crowdlift::testing

#endif  // CROWDLIFT_TESTS_SUPPORT_GOLDEN_TEXT_H_
