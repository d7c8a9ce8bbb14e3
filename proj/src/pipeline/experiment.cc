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

#include "crowdlift/pipeline/experiment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/llmfeat/augment.h"
#include "crowdlift/stats/distributions.h"

namespace crowdlift::pipeline {
namespace {

using nlohmann::json;

constexpr Comparison kComparisons[] = {Comparison::kAugmentedVsOriginal,
                                       Comparison::kAugmentedVsExtended,
                                       Comparison::kExtendedVsOriginal};

Variant Winner(Comparison c) {
  return c == Comparison::kExtendedVsOriginal ? Variant::kExtended : Variant::kAugmented;
}

template <typename T>
T Field(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(key, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(key, std::string("field '") + key + "' has the wrong type");
  }
}

ClogitModel FitModel(std::string name, const std::vector<const ChoiceRecord*>& records,
                     bool public_question) {
  ClogitModel m;
  m.model = std::move(name);
  m.num_pairs = records.size();
  if (records.empty()) {
    m.skipped_reason = "no choice records";
    return m;
  }
  std::vector<stats::ChoicePair> pairs;
  pairs.reserve(records.size());
  for (const ChoiceRecord* r : records) pairs.push_back(ToChoicePair(*r, public_question));
  try {
    m.fit = stats::FitConditionalLogit(pairs, {"augmented", "extended"});
    Eigen::Vector2d c(1.0, -1.0);
    m.wald = stats::WaldTest(m.fit->beta, m.fit->covariance, c);
  } catch (const Error& e) {
    m.skipped_reason = e.what();
  }
  return m;
}

}  // namespace

ExperimentDesign DesignExperiment(const SimulationReport& sim, llm::LlmClient& client,
                                  std::uint64_t seed) {
  if (sim.mode != AugmentMode::kCorrectThree) {
    throw ValidationError("experiment design needs a correct_three simulation, got " +
                          std::string(AugmentModeName(sim.mode)));
  }
  ExperimentDesign design;
  design.seed = seed;
  for (int g = 0; g < 2; ++g) {
    const bool funded = g == 0;
    std::vector<const SimulationRow*> eligible;
    for (const auto& r : sim.rows) {
      if (r.funded != funded) continue;
      if (r.words_before <= kMinExperimentWords) {
        ++design.excluded_short;
        continue;
      }
      eligible.push_back(&r);
    }
    std::sort(eligible.begin(), eligible.end(), [](const SimulationRow* a, const SimulationRow* b) {
      return a->lift != b->lift ? a->lift < b->lift : a->id < b->id;
    });
    const std::size_t m = eligible.size();
    std::vector<std::vector<const SimulationRow*>> strata(kStrataPerGroup);
    for (std::size_t rank = 0; rank < m; ++rank) {
      strata[rank * kStrataPerGroup / m].push_back(eligible[rank]);
    }
    for (int q = 0; q < kStrataPerGroup; ++q) {
      const std::string label =
          std::string(funded ? "funded" : "unfunded") + "_q" + std::to_string(q + 1);
      const auto& candidates = strata[static_cast<std::size_t>(q)];
      if (candidates.size() < static_cast<std::size_t>(kDrawsPerStratum)) {
        throw ValidationError("thin stratum " + label + ": " + std::to_string(candidates.size()) +
                              " eligible campaign(s), need " + std::to_string(kDrawsPerStratum));
      }
      StratumDraw draw;
      draw.stratum = label;
      draw.seed = DeriveSeed(seed, static_cast<std::uint64_t>(g * kStrataPerGroup + q));
      for (const SimulationRow* r : candidates) draw.candidates.push_back(r->id);
      Rng rng(draw.seed);
      draw.drawn = rng.SampleWithoutReplacement(candidates.size(), kDrawsPerStratum);
      for (std::size_t pos : draw.drawn) {
        const SimulationRow& r = *candidates[pos];
        if (r.words_after <= r.words_before) {
          throw ValidationError("augmented text of " + r.id + " adds no words");
        }
        DesignCampaign c;
        c.id = r.id;
        c.funded = r.funded;
        c.lift = r.lift;
        c.stratum = label;
        c.original = r.original_text;
        c.augmented = r.augmented_text;
        c.extended = llm::ExtendNeutral(r.original_text, r.words_after - r.words_before, client);
        c.words_original = r.words_before;
        c.words_augmented = r.words_after;
        c.words_extended = WordCount(c.extended);
        design.campaigns.push_back(std::move(c));
      }
      design.draws.push_back(std::move(draw));
    }
  }
  return design;
}

nlohmann::ordered_json DesignToJson(const ExperimentDesign& design) {
  nlohmann::ordered_json j;
  j["seed"] = design.seed;
  j["min_words_exclusive"] = kMinExperimentWords;
  j["excluded_short"] = design.excluded_short;
  j["campaigns"] = nlohmann::ordered_json::array();
  for (const auto& c : design.campaigns) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["funded"] = c.funded;
    e["stratum"] = c.stratum;
    e["lift"] = c.lift;
    e["words"] = {{"original", c.words_original},
                  {"augmented", c.words_augmented},
                  {"extended", c.words_extended}};
    e["original"] = c.original;
    e["augmented"] = c.augmented;
    e["extended"] = c.extended;
    j["campaigns"].push_back(e);
  }
  return j;
}

std::string FormatDrawLogCsv(const ExperimentDesign& design) {
  std::ostringstream out;
  out << "stratum,seed,draw,position,id\n";
  for (const auto& d : design.draws) {
    for (std::size_t k = 0; k < d.drawn.size(); ++k) {
      out << d.stratum << ',' << d.seed << ',' << k + 1 << ',' << d.drawn[k] << ','
          << d.candidates[d.drawn[k]] << '\n';
    }
  }
  return out.str();
}

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kOriginal:
      return "original";
    case Variant::kAugmented:
      return "augmented";
    case Variant::kExtended:
      return "extended";
  }
  return "original";
}

Variant ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kOriginal, Variant::kAugmented, Variant::kExtended}) {
    if (VariantName(v) == name) return v;
  }
  throw SchemaError("variant", "unknown variant '" + std::string(name) + "'");
}

ChoiceRecord ChoiceFromJson(const json& j) {
  if (!j.is_object()) throw SchemaError("record", "choice record must be a JSON object");
  ChoiceRecord r;
  r.participant = Field<std::string>(j, "participant");
  r.campaign = Field<std::string>(j, "campaign");
  r.first = ParseVariant(Field<std::string>(j, "first"));
  r.second = ParseVariant(Field<std::string>(j, "second"));
  if (r.first == r.second) throw SchemaError("second", "a pair must show two different variants");
  r.own_choice = ParseVariant(Field<std::string>(j, "own_choice"));
  r.public_choice = ParseVariant(Field<std::string>(j, "public_choice"));
  for (auto [field, v] : {std::pair{"own_choice", r.own_choice},
                          std::pair{"public_choice", r.public_choice}}) {
    if (v != r.first && v != r.second) {
      throw SchemaError(field, std::string(field) + " must be one of the two variants shown");
    }
  }
  r.attention_passed = Field<bool>(j, "attention_passed");
  r.recall_passed = Field<bool>(j, "recall_passed");
  r.donated_past_year = Field<bool>(j, "donated_past_year");
  if (j.contains("covariates")) {
    const json& cov = j.at("covariates");
    if (!cov.is_object()) throw SchemaError("covariates", "covariates must be an object");
    for (const auto& [key, value] : cov.items()) {
      if (!value.is_number()) throw SchemaError("covariates." + key, "covariate must be numeric");
      r.covariates[key] = value.get<double>();
    }
  }
  return r;
}

nlohmann::ordered_json ChoiceToJson(const ChoiceRecord& r) {
  nlohmann::ordered_json j;
  j["participant"] = r.participant;
  j["campaign"] = r.campaign;
  j["first"] = VariantName(r.first);
  j["second"] = VariantName(r.second);
  j["own_choice"] = VariantName(r.own_choice);
  j["public_choice"] = VariantName(r.public_choice);
  j["attention_passed"] = r.attention_passed;
  j["recall_passed"] = r.recall_passed;
  j["donated_past_year"] = r.donated_past_year;
  if (!r.covariates.empty()) {
    nlohmann::ordered_json cov;
    for (const auto& [k, v] : r.covariates) cov[k] = v;
    j["covariates"] = cov;
  }
  return j;
}

std::vector<ChoiceRecord> LoadChoices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open choice records " + path.string());
  std::vector<ChoiceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(ChoiceFromJson(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw SchemaError("record", path.string() + ":" + std::to_string(line_no) +
                                      ": malformed JSON: " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError(e.field(),
                        path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string_view ComparisonName(Comparison c) {
  switch (c) {
    case Comparison::kAugmentedVsOriginal:
      return "augmented_vs_original";
    case Comparison::kAugmentedVsExtended:
      return "augmented_vs_extended";
    case Comparison::kExtendedVsOriginal:
      return "extended_vs_original";
  }
  return "augmented_vs_original";
}

Comparison ComparisonOf(const ChoiceRecord& r) {
  auto shows = [&](Variant v) { return r.first == v || r.second == v; };
  if (!shows(Variant::kAugmented)) return Comparison::kExtendedVsOriginal;
  if (!shows(Variant::kExtended)) return Comparison::kAugmentedVsOriginal;
  return Comparison::kAugmentedVsExtended;
}

stats::ChoicePair ToChoicePair(const ChoiceRecord& r, bool public_question) {
  auto attrs = [](Variant v) {
    return std::vector<double>{v == Variant::kAugmented ? 1.0 : 0.0,
                               v == Variant::kExtended ? 1.0 : 0.0};
  };
  const Variant choice = public_question ? r.public_choice : r.own_choice;
  return {attrs(r.first), attrs(r.second), choice == r.first ? 0 : 1};
}

ExperimentAnalysis AnalyzeExperiment(const std::vector<ChoiceRecord>& records) {
  ExperimentAnalysis a;
  a.records_in = records.size();
  std::set<std::string> participants, failed;
  for (const auto& r : records) {
    participants.insert(r.participant);
    if (!r.attention_passed) failed.insert(r.participant);
  }
  a.participants_in = participants.size();
  a.participants_failed_attention = failed.size();

  std::vector<const ChoiceRecord*> used;
  for (const auto& r : records) {
    if (failed.contains(r.participant)) {
      ++a.records_failed_attention;
    } else if (!r.recall_passed) {
      ++a.records_failed_recall;
    } else {
      used.push_back(&r);
    }
  }
  a.records_used = used.size();

  for (Comparison c : kComparisons) {
    for (bool public_question : {false, true}) {
      PreferenceShare s;
      s.comparison = c;
      s.question = public_question ? "public" : "own";
      std::size_t wins = 0;
      for (const ChoiceRecord* r : used) {
        if (ComparisonOf(*r) != c) continue;
        ++s.n;
        if ((public_question ? r->public_choice : r->own_choice) == Winner(c)) ++wins;
      }
      if (s.n > 0) {
        s.share = static_cast<double>(wins) / static_cast<double>(s.n);
        s.se = std::sqrt(s.share * (1.0 - s.share) / static_cast<double>(s.n));
      }
      a.shares.push_back(s);
    }
  }

  std::vector<const ChoiceRecord*> donors;
  for (const ChoiceRecord* r : used) {
    if (r->donated_past_year) donors.push_back(r);
  }
  a.models.push_back(FitModel("own", used, false));
  a.models.push_back(FitModel("public", used, true));
  a.models.push_back(FitModel("own_donors", donors, false));
  a.models.push_back(FitModel("public_donors", donors, true));

  std::set<std::string> covariates;
  for (const ChoiceRecord* r : used) {
    for (const auto& [k, v] : r->covariates) covariates.insert(k);
  }
  for (const std::string& cov : covariates) {
    std::map<Comparison, std::vector<double>> values;
    for (const ChoiceRecord* r : used) {
      const auto it = r->covariates.find(cov);
      if (it != r->covariates.end()) values[ComparisonOf(*r)].push_back(it->second);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = i + 1; k < 3; ++k) {
        const auto& va = values[kComparisons[i]];
        const auto& vb = values[kComparisons[k]];
        if (va.empty() || vb.empty()) continue;
        a.ks.push_back({cov, kComparisons[i], kComparisons[k], stats::KsTest(va, vb)});
      }
    }
  }
  return a;
}

std::string FormatPreferenceCsv(const ExperimentAnalysis& a) {
  std::ostringstream out;
  out << "comparison,question,n,share,se\n";
  for (const auto& s : a.shares) {
    out << ComparisonName(s.comparison) << ',' << s.question << ',' << s.n << ','
        << FormatFixed(s.share, 6) << ',' << FormatFixed(s.se, 6) << '\n';
  }
  return out.str();
}

std::string FormatClogitCsv(const ExperimentAnalysis& a) {
  std::ostringstream out;
  out << "model,term,estimate,se,p_value,stars,contrast,contrast_se,num_pairs\n";
  for (const auto& m : a.models) {
    if (!m.fit) {
      out << m.model << ",skipped,NA,NA,NA,,NA,NA," << m.num_pairs << '\n';
      continue;
    }
    const auto se = m.fit->StandardErrors();
    for (std::size_t j = 0; j < m.fit->names.size(); ++j) {
      const auto i = static_cast<Eigen::Index>(j);
      const double z = m.fit->beta(i) / se(i);
      const double p = stats::TwoSidedNormalP(z);
      out << m.model << ',' << m.fit->names[j] << ',' << FormatFixed(m.fit->beta(i), 6) << ','
          << FormatFixed(se(i), 6) << ',' << FormatFixed(p, 6) << ',' << stats::Stars(p) << ','
          << FormatFixed(m.fit->probability_contrast(i), 6) << ','
          << FormatFixed(m.fit->contrast_se(i), 6) << ',' << m.num_pairs << '\n';
    }
    if (m.wald) {
      out << m.model << ",wald_augmented_eq_extended," << FormatFixed(m.wald->statistic, 6)
          << ",NA," << FormatFixed(m.wald->p_value, 6) << ',' << stats::Stars(m.wald->p_value)
          << ",NA,NA," << m.num_pairs << '\n';
    }
  }
  return out.str();
}

std::string FormatKsCsv(const ExperimentAnalysis& a) {
  std::ostringstream out;
  out << "covariate,comparison_a,comparison_b,statistic,p_value\n";
  for (const auto& k : a.ks) {
    out << k.covariate << ',' << ComparisonName(k.a) << ',' << ComparisonName(k.b) << ','
        << FormatFixed(k.result.statistic, 6) << ',' << FormatFixed(k.result.p_value, 6) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json AnalysisToJson(const ExperimentAnalysis& a) {
  nlohmann::ordered_json j;
  j["records_in"] = a.records_in;
  j["participants_in"] = a.participants_in;
  j["participants_failed_attention"] = a.participants_failed_attention;
  j["records_failed_attention"] = a.records_failed_attention;
  j["records_failed_recall"] = a.records_failed_recall;
  j["records_used"] = a.records_used;
  j["models"] = nlohmann::ordered_json::array();
  for (const auto& m : a.models) {
    nlohmann::ordered_json e;
    e["model"] = m.model;
    e["num_pairs"] = m.num_pairs;
    if (m.fit) {
      e["beta"] = {{"augmented", m.fit->beta(0)}, {"extended", m.fit->beta(1)}};
      e["converged"] = m.fit->convergence.converged;
    }
    if (m.wald) e["wald"] = {{"statistic", m.wald->statistic}, {"p_value", m.wald->p_value}};
    if (!m.skipped_reason.empty()) e["skipped_reason"] = m.skipped_reason;
    j["models"].push_back(e);
  }
  bool any_significant = false;
  for (const auto& k : a.ks) any_significant = any_significant || k.result.p_value <= 0.10;
  j["ks_checks"] = a.ks.size();
  j["ks_any_significant_at_0_10"] = any_significant;
  return j;
}

}  // namespace crowdlift::pipeline
