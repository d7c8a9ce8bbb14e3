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

#ifndef CROWDLIFT_STATS_DISTRIBUTIONS_H_
#define CROWDLIFT_STATS_DISTRIBUTIONS_H_

#include <cmath>

namespace crowdlift::stats {

inline double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
inline double TwoSidedNormalP(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }
// Upper tail of chi-square with one degree of freedom.
inline double ChiSquare1P(double stat) { return std::erfc(std::sqrt(stat / 2.0)); }
inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// "***" at p < 0.01, "**" at p < 0.05, "*" at p < 0.1.
inline const char* Stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

}  // namespace crowdlift::stats

#endif  // CROWDLIFT_STATS_DISTRIBUTIONS_H_
