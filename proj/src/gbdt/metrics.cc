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

#include "crowdlift/gbdt/metrics.h"

#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"

namespace crowdlift::gbdt {

EvalMetrics ComputeMetrics(std::span<const int> labels, std::span<const int> predictions) {
  if (labels.empty()) throw ValidationError("cannot evaluate an empty set");
  if (labels.size() != predictions.size()) {
    throw ValidationError("labels and predictions differ in length");
  }
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool y = labels[i] == 1;
    const bool p = predictions[i] == 1;
    if (y && p) ++tp;
    else if (!y && p) ++fp;
    else if (y && !p) ++fn;
    else ++tn;
  }
  EvalMetrics m;
  const auto d = [](std::size_t x) { return static_cast<double>(x); };
  m.precision = tp + fp > 0 ? d(tp) / d(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? d(tp) / d(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.accuracy = d(tp + tn) / d(labels.size());
  return m;
}

EvalMetrics Evaluate(const GbdtModel& model, const FeatureMatrix& set, std::span<const int> labels,
                     double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("threshold must lie in (0, 1)");
  }
  if (set.num_rows() == 0) throw ValidationError("cannot evaluate an empty set");
  const std::vector<double> p = model.PredictProba(set);
  std::vector<int> pred(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pred[i] = p[i] >= threshold ? 1 : 0;
  return ComputeMetrics(labels, pred);
}

UniformBaseline::UniformBaseline(std::span<const int> train_labels) {
  if (train_labels.empty()) throw ValidationError("baseline needs training labels");
  std::size_t pos = 0;
  for (int y : train_labels) pos += y == 1 ? 1 : 0;
  majority_ = 2 * pos >= train_labels.size() ? 1 : 0;
}

BernoulliBaseline::BernoulliBaseline(std::span<const int> train_labels, std::uint64_t seed)
    : seed_(seed) {
  if (train_labels.empty()) throw ValidationError("baseline needs training labels");
  std::size_t pos = 0;
  for (int y : train_labels) pos += y == 1 ? 1 : 0;
  p_ = static_cast<double>(pos) / static_cast<double>(train_labels.size());
}

std::vector<int> BernoulliBaseline::Predict(std::size_t n) const {
  Rng rng(seed_);
  std::vector<int> out(n);
  for (auto& v : out) v = rng.Bernoulli(p_) ? 1 : 0;
  return out;
}

std::string FormatMetricsCsv(std::span<const MetricsRow> rows) {
  std::ostringstream out;
  out << "model,split,precision,recall,f1,accuracy\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.split << ',' << FormatFixed(r.metrics.precision, 4) << ','
        << FormatFixed(r.metrics.recall, 4) << ',' << FormatFixed(r.metrics.f1, 4) << ','
        << FormatFixed(r.metrics.accuracy, 4) << '\n';
  }
  return out.str();
}

}  // namespace crowdlift::gbdt
