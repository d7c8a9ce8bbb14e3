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

#ifndef CROWDLIFT_LLMFEAT_AUDIT_H_
#define CROWDLIFT_LLMFEAT_AUDIT_H_

#include <optional>
#include <string>
#include <vector>

#include "crowdlift/llmfeat/gpt_features.h"

namespace crowdlift::llm {

struct FlagAgreement {
  GptFlag flag;
  // nullopt when kappa is undefined for this flag.
  std::optional<double> kappa;
};

// Per-flag Cohen's kappa between aligned LLM and human labels, in prompt task
// order. Throws ValidationError on a length mismatch or fewer than 2 items.
std::vector<FlagAgreement> AuditAgreement(const std::vector<GptFeatureSet>& llm_labels,
                                          const std::vector<GptFeatureSet>& human_labels);

// Two-column CSV: flag label, kappa (or "undefined").
std::string FormatAuditReport(const std::vector<FlagAgreement>& rows);

}  // namespace crowdlift::llm

#endif  // CROWDLIFT_LLMFEAT_AUDIT_H_
