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

#include "crowdlift/context/assemble.h"

#include "crowdlift/common/error.h"
#include "crowdlift/common/parallel.h"
#include "crowdlift/llmfeat/gpt_features.h"
#include "crowdlift/textfeat/features.h"

namespace crowdlift::context {
namespace {

[[noreturn]] void RethrowForCampaign(const std::string& id) {
  const std::string where = "campaign " + id + ": ";
  try {
    throw;
  } catch (const SchemaError& e) {
    throw SchemaError(e.field(), where + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + e.what());
  } catch (const ProviderError& e) {
    throw ProviderError(where + e.what());
  } catch (const IoError& e) {
    throw IoError(where + e.what());
  } catch (const std::exception& e) {
    throw Error(where + e.what());
  }
}

}  // namespace

const std::vector<FeatureColumn>& CanonicalColumns() {
  static const std::vector<FeatureColumn> kColumns = [] {
    std::vector<FeatureColumn> cols;
    for (const auto& n : text::LexiconFeatureNames()) cols.push_back({n, FeatureGroup::kTextual});
    for (llm::GptFlag f : llm::AllGptFlags()) {
      cols.push_back({std::string(llm::GptFlagName(f)), FeatureGroup::kTextual});
    }
    for (const char* n : {"goal_amount", "organizer_male", "has_beneficiary", "gofundme_organized"}) {
      cols.push_back({n, FeatureGroup::kConfiguration});
    }
    cols.push_back({"covid_cases_7d", FeatureGroup::kPandemic});
    cols.push_back({"covid_share_of_us", FeatureGroup::kPandemic});
    for (const auto& c : AcsColumns()) {
      cols.push_back({std::string(c.name), FeatureGroup::kDemographics});
    }
    return cols;
  }();
  return kColumns;
}

std::vector<double> TextualFeatures(const std::string& description,
                                    const text::TextResources& resources, llm::LlmClient& client) {
  std::vector<double> out = text::ExtractLexiconFeatures(description, resources).values;
  const llm::GptFeatureSet gpt = llm::ExtractGptFeatures(description, client);
  for (llm::GptFlag f : llm::AllGptFlags()) out.push_back(gpt.Get(f) ? 1.0 : 0.0);
  return out;
}

std::vector<double> NonTextualFeatures(const corpus::CampaignRecord& record, const AcsTable& acs,
                                       const CovidSeries& covid, Coverage coverage) {
  if (!record.created_date) throw ValidationError("campaign has no posting date");
  std::vector<double> out = {record.goal_amount, record.organizer_male ? 1.0 : 0.0,
                             record.has_beneficiary ? 1.0 : 0.0,
                             record.gofundme_organized ? 1.0 : 0.0};
  CovidShock shock{kMissing, kMissing};
  try {
    shock = covid.Shock(record.state, *record.created_date);
  } catch (const ValidationError&) {
    if (coverage == Coverage::kStrict) throw;
  }
  out.push_back(shock.cases_7d);
  out.push_back(shock.share_of_us);
  const AcsRow demo = acs.Join(record.city, record.state);
  out.insert(out.end(), demo.begin(), demo.end());
  return out;
}

std::vector<double> AssembleRow(const corpus::CampaignRecord& record,
                                const text::TextResources& resources, llm::LlmClient& client,
                                const AcsTable& acs, const CovidSeries& covid, Coverage coverage) {
  std::vector<double> row = TextualFeatures(record.description, resources, client);
  const std::vector<double> rest = NonTextualFeatures(record, acs, covid, coverage);
  row.insert(row.end(), rest.begin(), rest.end());
  return row;
}

FeatureMatrix AssembleFeatureMatrix(const std::vector<corpus::CampaignRecord>& records,
                                    const text::TextResources& resources, llm::LlmClient& client,
                                    const AcsTable& acs, const CovidSeries& covid, int workers) {
  const auto rows = OrderedParallelMap<std::vector<double>>(
      records.size(), static_cast<std::size_t>(std::max(workers, 1)), [&](std::size_t i) {
        try {
          return AssembleRow(records[i], resources, client, acs, covid);
        } catch (...) {
          RethrowForCampaign(records[i].id);
        }
      });
  FeatureMatrix m(CanonicalColumns());
  for (std::size_t i = 0; i < records.size(); ++i) m.AddRow(records[i].id, rows[i]);
  return m;
}

}  // namespace crowdlift::context
