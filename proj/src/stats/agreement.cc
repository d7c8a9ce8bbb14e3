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

#include "crowdlift/stats/agreement.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "crowdlift/common/error.h"

namespace crowdlift::stats {

std::optional<double> CohenKappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ValidationError("kappa: rater label lists differ in length");
  if (a.empty()) throw ValidationError("kappa: need at least one label");
  const double n = static_cast<double>(a.size());
  std::map<int, double> count_a;
  std::map<int, double> count_b;
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count_a[a[i]] += 1;
    count_b[b[i]] += 1;
    if (a[i] == b[i]) agree += 1;
  }
  const double po = agree / n;
  double pe = 0;
  for (const auto& [label, ca] : count_a) {
    if (auto it = count_b.find(label); it != count_b.end()) pe += (ca / n) * (it->second / n);
  }
  if (pe >= 1.0) {
    if (count_a.size() == 1 && count_b.size() == 1 && po == 1.0) return 1.0;
    return std::nullopt;
  }
  return (po - pe) / (1.0 - pe);
}

double KolmogorovQ(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0;
  double sign = 1;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum) || std::abs(term) < 1e-300) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult KsTest(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  const double en = std::sqrt(n1 * n2 / (n1 + n2));
  KsResult r;
  r.statistic = d;
  r.p_value = KolmogorovQ((en + 0.12 + 0.11 / en) * d);
  return r;
}

}  // namespace crowdlift::stats
