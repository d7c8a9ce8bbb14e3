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

#include "crowdlift/llmfeat/audit.h"

#include "crowdlift/common/csv.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/stats/agreement.h"

namespace crowdlift::llm {

std::vector<FlagAgreement> AuditAgreement(const std::vector<GptFeatureSet>& llm_labels,
                                          const std::vector<GptFeatureSet>& human_labels) {
  if (llm_labels.size() != human_labels.size()) {
    throw ValidationError("audit: LLM and human label lists differ in length");
  }
  if (llm_labels.size() < 2) throw ValidationError("audit: need at least two labelled items");
  std::vector<FlagAgreement> out;
  for (GptFlag flag : AllGptFlags()) {
    std::vector<int> a;
    std::vector<int> b;
    for (std::size_t i = 0; i < llm_labels.size(); ++i) {
      a.push_back(llm_labels[i].Get(flag) ? 1 : 0);
      b.push_back(human_labels[i].Get(flag) ? 1 : 0);
    }
    out.push_back({flag, stats::CohenKappa(a, b)});
  }
  return out;
}

std::string FormatAuditReport(const std::vector<FlagAgreement>& rows) {
  std::string out = "flag,kappa\n";
  for (const auto& r : rows) {
    out += csv::FormatRow({std::string(GptFlagLabel(r.flag)),
                           r.kappa ? FormatFixed(*r.kappa, 4) : std::string("undefined")});
    out += "\n";
  }
  return out;
}

}  // namespace crowdlift::llm
