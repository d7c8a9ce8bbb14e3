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

#ifndef CROWDLIFT_TEXTFEAT_FEATURES_H_
#define CROWDLIFT_TEXTFEAT_FEATURES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crowdlift/textfeat/resources.h"
#include "crowdlift/textfeat/tokenizer.h"

namespace crowdlift::text {

inline constexpr std::size_t kLexiconFeatureCount = 105;

// The dictionary categories the extractor requires, in output order.
const std::vector<std::string>& CanonicalCategories();

// All 105 feature names in canonical order.
const std::vector<std::string>& LexiconFeatureNames();

struct Readability {
  double word_count = 0;
  double words_per_sentence = 0;
  double syllables_per_word = 0;
  double fk_grade = 0;
};

// Throws ValidationError when the text has no tokens.
Readability ComputeReadability(const TokenizedText& tok);

// 100 * matching tokens / total tokens for every category of `dict`.
std::map<std::string, double> CategoryPercentages(const TokenizedText& tok,
                                                  const CategoryDictionary& dict);

// Raw per-category token counts, in dict.categories() order.
std::vector<int> CategoryCounts(const TokenizedText& tok, const CategoryDictionary& dict);

// Mean score over tokens found in the lexicon; midpoint of the range if none.
double LexiconMean(const TokenizedText& tok, const ValenceLexicon& lex);

struct EmotionScores {
  double joy = 0;
  double sadness = 0;
  double positive = 0;
  double negative = 0;
  double polarity = 0;
};

EmotionScores EmotionAndPolarity(const TokenizedText& tok, const NrcLexicons& nrc,
                                 const ValenceLexicon& polarity);

struct TextFlags {
  bool contains_spam = false;
  bool mentions_person = false;
};

// A person mention is a capitalized token that is not first in its sentence
// (excluding the pronoun I and its contractions and all-caps words), or any
// capitalized token directly after an honorific.
TextFlags DetectFlags(const TokenizedText& tok, const PhraseList& spam,
                      const PhraseList& honorifics);

struct TextFeatureVector {
  std::vector<double> values;  // aligned with LexiconFeatureNames()

  double Get(std::string_view name) const;
};

// Throws ValidationError for empty text or a dictionary missing a canonical
// category.
TextFeatureVector ExtractLexiconFeatures(std::string_view text, const TextResources& resources);

}  // namespace crowdlift::text

#endif  // CROWDLIFT_TEXTFEAT_FEATURES_H_
