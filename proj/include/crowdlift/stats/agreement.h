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

#ifndef CROWDLIFT_STATS_AGREEMENT_H_
#define CROWDLIFT_STATS_AGREEMENT_H_

#include <optional>
#include <span>

namespace crowdlift::stats {

// Cohen's kappa for two raters over integer category labels. Returns 1 when
// both raters give one identical constant label, and nullopt when chance
// agreement is 1 otherwise. Throws ValidationError on a length mismatch or
// empty input.
std::optional<double> CohenKappa(std::span<const int> a, std::span<const int> b);

struct KsResult {
  double statistic = 0;  // D
  double p_value = 1;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value and the
// effective-n correction lambda = (sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) * D.
KsResult KsTest(std::span<const double> a, std::span<const double> b);

// Kolmogorov survival function Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double KolmogorovQ(double lambda);

}  // namespace crowdlift::stats

#endif  // CROWDLIFT_STATS_AGREEMENT_H_
