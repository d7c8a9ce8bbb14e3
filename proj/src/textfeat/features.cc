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

#include "crowdlift/textfeat/features.h"

#include <algorithm>
#include <cmath>

#include "crowdlift/common/error.h"
#include "crowdlift/textfeat/syllables.h"

namespace crowdlift::text {
namespace {

constexpr std::size_t kBigWordLength = 7;

std::size_t CodePointLength(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

double Percent(double count, double total) { return 100.0 * count / total; }

void RequireTokens(const TokenizedText& tok, const char* what) {
  if (tok.tokens.empty()) throw ValidationError(std::string(what) + " requires nonempty text");
}

double FlaggedFraction(const TokenizedText& tok, const ValenceLexicon& lex) {
  if (tok.tokens.empty() || lex.empty()) return 0.0;
  std::size_t flagged = 0;
  for (const Token& t : tok.tokens) {
    const double* score = lex.Find(t.text);
    if (score != nullptr && *score > 0.0) ++flagged;
  }
  return static_cast<double>(flagged) / static_cast<double>(tok.tokens.size());
}

bool IsCapitalized(std::string_view surface) {
  if (surface.empty() || surface[0] < 'A' || surface[0] > 'Z') return false;
  // All-caps words of two or more letters are acronyms, not names.
  bool has_lower = false;
  std::size_t letters = 0;
  for (char c : surface) {
    if (c >= 'a' && c <= 'z') has_lower = true;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++letters;
  }
  return has_lower || letters == 1;
}

bool IsFirstPersonI(std::string_view lowered) {
  return lowered == "i" || lowered.starts_with("i'");
}

}  // namespace

const std::vector<std::string>& CanonicalCategories() {
  static const std::vector<std::string> kCategories = {
      "function", "pronoun", "ppron", "i", "we", "you", "shehe", "they", "ipron", "det",
      "article", "number", "prep", "auxverb", "adverb", "conj", "negate", "verb", "adj",
      "quantity", "drives", "affiliation", "achieve", "power", "cognition", "allnone",
      "cogproc", "insight", "cause", "discrep", "tentat", "certitude", "differ", "memory",
      "affect", "tone_pos", "tone_neg", "emotion", "emo_pos", "emo_neg", "emo_anx",
      "emo_anger", "emo_sad", "social", "socbehav", "prosocial", "polite", "conflict", "moral",
      "comm", "socrefs", "family", "friend", "female", "male", "culture", "politic",
      "ethnicity", "tech", "lifestyle", "leisure", "home", "work", "money", "relig",
      "physical", "health", "illness", "wellness", "mental", "food", "death", "need", "want",
      "acquire", "lack", "fulfill", "reward", "risk", "perception", "attention", "motion",
      "space", "visual", "auditory", "feeling", "time", "focuspast", "focuspresent",
      "focusfuture"};
  return kCategories;
}

const std::vector<std::string>& LexiconFeatureNames() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names = {"word_count", "words_per_sentence", "big_words",
                                      "dictionary_words"};
    for (const std::string& c : CanonicalCategories()) names.push_back("dict_" + c);
    for (const char* n : {"concreteness", "dominance", "fk_grade", "syllables_per_word",
                          "polarity", "nrc_joy", "nrc_sadness", "nrc_positive", "nrc_negative",
                          "contains_spam", "mentions_person"}) {
      names.emplace_back(n);
    }
    return names;
  }();
  return kNames;
}

Readability ComputeReadability(const TokenizedText& tok) {
  RequireTokens(tok, "readability");
  const double words = static_cast<double>(tok.tokens.size());
  const double sentences = static_cast<double>(tok.sentences.size());
  double syllables = 0;
  for (const Token& t : tok.tokens) syllables += TokenSyllables(t.text);
  Readability r;
  r.word_count = words;
  r.words_per_sentence = words / sentences;
  r.syllables_per_word = syllables / words;
  r.fk_grade = 0.39 * r.words_per_sentence + 11.8 * r.syllables_per_word - 15.59;
  return r;
}

std::vector<int> CategoryCounts(const TokenizedText& tok, const CategoryDictionary& dict) {
  std::vector<int> counts(dict.categories().size(), 0);
  for (const Token& t : tok.tokens) {
    for (int c : dict.Match(t.text)) ++counts[c];
  }
  return counts;
}

std::map<std::string, double> CategoryPercentages(const TokenizedText& tok,
                                                  const CategoryDictionary& dict) {
  RequireTokens(tok, "category percentages");
  const std::vector<int> counts = CategoryCounts(tok, dict);
  const double total = static_cast<double>(tok.tokens.size());
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[dict.categories()[i]] = Percent(counts[i], total);
  }
  return out;
}

double LexiconMean(const TokenizedText& tok, const ValenceLexicon& lex) {
  double sum = 0;
  std::size_t hits = 0;
  for (const Token& t : tok.tokens) {
    if (const double* score = lex.Find(t.text)) {
      sum += *score;
      ++hits;
    }
  }
  return hits == 0 ? lex.Midpoint() : sum / static_cast<double>(hits);
}

EmotionScores EmotionAndPolarity(const TokenizedText& tok, const NrcLexicons& nrc,
                                 const ValenceLexicon& polarity) {
  EmotionScores s;
  s.joy = FlaggedFraction(tok, nrc.joy);
  s.sadness = FlaggedFraction(tok, nrc.sadness);
  s.positive = FlaggedFraction(tok, nrc.positive);
  s.negative = FlaggedFraction(tok, nrc.negative);
  s.polarity = polarity.empty() ? 0.0 : std::clamp(LexiconMean(tok, polarity), -1.0, 1.0);
  return s;
}

TextFlags DetectFlags(const TokenizedText& tok, const PhraseList& spam,
                      const PhraseList& honorifics) {
  TextFlags flags;
  std::vector<std::string> words;
  words.reserve(tok.tokens.size());
  for (const Token& t : tok.tokens) words.push_back(t.text);
  flags.contains_spam = spam.OccursIn(words);

  for (const SentenceRange& sentence : tok.sentences) {
    for (std::size_t i = sentence.begin; i < sentence.end && !flags.mentions_person; ++i) {
      const std::string_view surface = tok.Surface(i);
      if (!IsCapitalized(surface) || IsFirstPersonI(tok.tokens[i].text)) continue;
      const bool after_honorific = i > 0 && honorifics.ContainsWord(tok.tokens[i - 1].text);
      if (i > sentence.begin || after_honorific) flags.mentions_person = true;
    }
  }
  return flags;
}

double TextFeatureVector::Get(std::string_view name) const {
  const auto& names = LexiconFeatureNames();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ValidationError("unknown lexicon feature '" + std::string(name) + "'");
  return values[static_cast<std::size_t>(it - names.begin())];
}

TextFeatureVector ExtractLexiconFeatures(std::string_view text, const TextResources& resources) {
  const auto& categories = CanonicalCategories();
  for (const std::string& c : categories) {
    if (!resources.dictionary.HasCategory(c)) {
      throw ValidationError("missing resource: dictionary category '" + c + "'");
    }
  }
  const TokenizedText tok = Tokenize(text);
  const Readability read = ComputeReadability(tok);
  const double total = static_cast<double>(tok.tokens.size());

  std::size_t big = 0;
  std::size_t in_dictionary = 0;
  std::vector<int> counts(resources.dictionary.categories().size(), 0);
  for (const Token& t : tok.tokens) {
    if (CodePointLength(t.text) >= kBigWordLength) ++big;
    const std::vector<int> hits = resources.dictionary.Match(t.text);
    if (!hits.empty()) ++in_dictionary;
    for (int c : hits) ++counts[c];
  }
  const EmotionScores emo = EmotionAndPolarity(tok, resources.nrc, resources.polarity);
  const TextFlags flags = DetectFlags(tok, resources.spam, resources.honorifics);

  TextFeatureVector out;
  out.values.reserve(kLexiconFeatureCount);
  out.values.push_back(read.word_count);
  out.values.push_back(read.words_per_sentence);
  out.values.push_back(Percent(static_cast<double>(big), total));
  out.values.push_back(Percent(static_cast<double>(in_dictionary), total));
  const auto& dict_categories = resources.dictionary.categories();
  for (const std::string& c : categories) {
    const auto idx = std::find(dict_categories.begin(), dict_categories.end(), c) -
                     dict_categories.begin();
    out.values.push_back(Percent(counts[static_cast<std::size_t>(idx)], total));
  }
  out.values.push_back(LexiconMean(tok, resources.concreteness));
  out.values.push_back(LexiconMean(tok, resources.dominance));
  out.values.push_back(read.fk_grade);
  out.values.push_back(read.syllables_per_word);
  out.values.push_back(emo.polarity);
  out.values.push_back(emo.joy);
  out.values.push_back(emo.sadness);
  out.values.push_back(emo.positive);
  out.values.push_back(emo.negative);
  out.values.push_back(flags.contains_spam ? 1.0 : 0.0);
  out.values.push_back(flags.mentions_person ? 1.0 : 0.0);
  return out;
}

}  // namespace crowdlift::text
