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

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/textfeat/features.h"
#include "crowdlift/textfeat/resources.h"
#include "crowdlift/textfeat/syllables.h"
#include "crowdlift/textfeat/tokenizer.h"
#include "support/golden_text.h"

namespace crowdlift::text {
namespace {

const TextResources& Bundled() {
  static const TextResources r = TextResources::LoadFromDirectory(CROWDLIFT_RESOURCE_DIR);
  return r;
}

std::vector<std::string> Words(const TokenizedText& t) {
  std::vector<std::string> out;
  for (const auto& tok : t.tokens) out.push_back(tok.text);
  return out;
}

TEST(TokenizerTest, SingleSentence) {
  const auto t = Tokenize("We thank you.");
  EXPECT_EQ(Words(t), (std::vector<std::string>{"we", "thank", "you"}));
  ASSERT_EQ(t.sentences.size(), 1u);
  EXPECT_EQ(t.SentenceText(0), "We thank you.");
}

TEST(TokenizerTest, EmptyText) {
  const auto t = Tokenize("");
  EXPECT_TRUE(t.tokens.empty());
  EXPECT_TRUE(t.sentences.empty());
}

TEST(TokenizerTest, TwoTerminators) {
  EXPECT_EQ(Tokenize("Hi! Bye.").sentences.size(), 2u);
  EXPECT_EQ(SplitSentences("Hi! Bye."), (std::vector<std::string>{"Hi!", "Bye."}));
}

TEST(TokenizerTest, AbbreviationDoesNotSplit) {
  const auto t = Tokenize("Dr. Lopez visits. Mr. Li too.");
  EXPECT_EQ(t.sentences.size(), 2u);
}

TEST(TokenizerTest, ApostrophesNumbersAndHyphens) {
  const auto t = Tokenize("Maria’s shop can't pay $1,250.50 for well-being");
  EXPECT_EQ(Words(t), (std::vector<std::string>{"maria's", "shop", "can't", "pay", "1,250.50",
                                                "for", "well", "being"}));
}

TEST(TokenizerTest, NonAsciiLettersStayInTokens) {
  const auto t = Tokenize("Café Zoë — opened!");
  EXPECT_EQ(Words(t), (std::vector<std::string>{"café", "zoë", "opened"}));
}

TEST(TokenizerTest, SentencesCoverEveryTokenContiguously) {
  const std::string text =
      "First line... Second one?! Third: a list, etc. And \"quoted.\" Then (parens.) End";
  const auto t = Tokenize(text);
  std::size_t expect = 0;
  for (const auto& s : t.sentences) {
    EXPECT_EQ(s.begin, expect);
    EXPECT_GT(s.end, s.begin);
    expect = s.end;
  }
  EXPECT_EQ(expect, t.tokens.size());
}

TEST(TokenizerTest, TokensAppearInRawTextInOrder) {
  const std::string text = "It’s 9.5 degrees; we're OK. Really, truly fine!";
  const auto t = Tokenize(text);
  std::size_t last_end = 0;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    EXPECT_GE(t.tokens[i].begin, last_end);
    EXPECT_EQ(AsciiLower(t.Surface(i)).size(), t.Surface(i).size());
    last_end = t.tokens[i].end;
  }
}

TEST(SyllableTest, SpecExamples) {
  EXPECT_EQ(CountSyllables("cat"), 1);
  EXPECT_EQ(CountSyllables("gratitude"), 3);
  EXPECT_EQ(CountSyllables("donate"), 2);
  EXPECT_EQ(CountSyllables("Donate"), 2);
}

TEST(SyllableTest, RejectsNonAlphabetic) {
  EXPECT_THROW(CountSyllables(""), ValidationError);
  EXPECT_THROW(CountSyllables("can't"), ValidationError);
  EXPECT_THROW(CountSyllables("b2b"), ValidationError);
  EXPECT_EQ(TokenSyllables("2009"), 1);
  EXPECT_EQ(TokenSyllables("can't"), 1);
}

TEST(SyllableTest, FrozenFixtureAndDictionaryAgreement) {
  std::ifstream in(std::string(CROWDLIFT_TEST_DATA_DIR) + "/syllables_200.tsv");
  ASSERT_TRUE(in);
  int rows = 0;
  int agree = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string word;
    int reference = 0;
    int frozen = 0;
    fields >> word >> reference >> frozen;
    ++rows;
    EXPECT_EQ(CountSyllables(word), frozen) << word;
    if (CountSyllables(word) == reference) ++agree;
  }
  EXPECT_EQ(rows, 200);
  EXPECT_GE(agree, 180);
}

TEST(ReadabilityTest, WeThankYou) {
  const auto r = ComputeReadability(Tokenize("We thank you."));
  EXPECT_EQ(r.word_count, 3);
  EXPECT_EQ(r.words_per_sentence, 3);
  EXPECT_EQ(r.syllables_per_word, 1.0);
  EXPECT_NEAR(r.fk_grade, -2.62, 1e-12);
}

TEST(ReadabilityTest, RepeatedSentenceKeepsGrade) {
  const auto one = ComputeReadability(Tokenize("Our bakery needs your generous help."));
  const auto two = ComputeReadability(
      Tokenize("Our bakery needs your generous help. Our bakery needs your generous help."));
  EXPECT_DOUBLE_EQ(one.fk_grade, two.fk_grade);
}

TEST(ReadabilityTest, EmptyTextFails) {
  EXPECT_THROW(ComputeReadability(Tokenize("")), ValidationError);
}

TEST(DictionaryTest, HandCountedPercentage) {
  CategoryDictionary dict("test");
  dict.AddPattern("we", "we");
  dict.AddCategory("empty");
  const auto pct = CategoryPercentages(Tokenize("we thank you and we smile"), dict);
  EXPECT_NEAR(pct.at("we"), 100.0 * 2 / 6, 1e-12);
  EXPECT_NEAR(pct.at("we"), 33.33, 0.005);
  EXPECT_EQ(pct.at("empty"), 0.0);
}

TEST(DictionaryTest, StemMatchesPrefix) {
  CategoryDictionary dict("test");
  dict.AddPattern("polite", "thank*");
  const auto counts = CategoryCounts(Tokenize("thanks thankful thank than"), dict);
  EXPECT_EQ(counts[0], 3);
}

TEST(DictionaryTest, RejectsBadPatterns) {
  CategoryDictionary dict("test");
  EXPECT_THROW(dict.AddPattern("x", ""), ValidationError);
  EXPECT_THROW(dict.AddPattern("x", "th*nk"), ValidationError);
  EXPECT_THROW(CategoryDictionary::Parse("word\n", "bad"), ValidationError);
}

TEST(DictionaryTest, ParsesHeadersAndComments) {
  const auto dict = CategoryDictionary::Parse("# c\n[we]\nwe us\n[money]\nfund* cash\n", "t");
  EXPECT_EQ(dict.categories(), (std::vector<std::string>{"we", "money"}));
  EXPECT_EQ(dict.Match("funding"), (std::vector<int>{1}));
  EXPECT_EQ(dict.Match("us"), (std::vector<int>{0}));
}

TEST(DictionaryTest, CountsAreAdditiveOverConcatenation) {
  const auto& dict = Bundled().dictionary;
  const std::string a = "We thank our loyal customers for their support.";
  const std::string b = "The pandemic closed the shop, and we need help with rent!";
  const auto ca = CategoryCounts(Tokenize(a), dict);
  const auto cb = CategoryCounts(Tokenize(b), dict);
  const auto cab = CategoryCounts(Tokenize(a + " " + b), dict);
  for (std::size_t i = 0; i < ca.size(); ++i) EXPECT_EQ(cab[i], ca[i] + cb[i]);
}

TEST(BundledDictionaryTest, HasEveryCanonicalCategory) {
  EXPECT_EQ(CanonicalCategories().size(), 90u);
  for (const auto& c : CanonicalCategories()) EXPECT_TRUE(Bundled().dictionary.HasCategory(c)) << c;
}

TEST(LexiconTest, MeanOverHits) {
  ValenceLexicon lex(1, 5);
  lex.Add("apple", 5.0);
  lex.Add("idea", 1.5);
  EXPECT_NEAR(LexiconMean(Tokenize("apple idea apple"), lex), (5.0 + 1.5 + 5.0) / 3, 1e-12);
  EXPECT_NEAR(LexiconMean(Tokenize("apple idea apple"), lex), 3.83, 0.005);
  EXPECT_EQ(LexiconMean(Tokenize("nothing here"), lex), 3.0);
  EXPECT_EQ(LexiconMean(Tokenize("idea"), lex), 1.5);
}

TEST(LexiconTest, RejectsOutOfRangeScores) {
  ValenceLexicon lex(1, 5);
  EXPECT_THROW(lex.Add("x", 6), ValidationError);
  EXPECT_THROW(ValenceLexicon::Parse("#range 0 1\nword\t2\n", "t"), ValidationError);
  EXPECT_THROW(ValenceLexicon::Parse("word\t0.5\n", "t"), ValidationError);
}

TEST(EmotionTest, SaturationAndPolarity) {
  NrcLexicons nrc;
  nrc.joy.Add("joy", 1);
  nrc.joy.Add("happy", 1);
  ValenceLexicon pol(-1, 1);
  pol.Add("good", 0.7);
  pol.Add("bad", -0.7);
  EXPECT_EQ(EmotionAndPolarity(Tokenize("happy joy happy"), nrc, pol).joy, 1.0);
  EXPECT_NEAR(EmotionAndPolarity(Tokenize("good good bad"), nrc, pol).polarity, 0.7 / 3, 1e-12);
  const auto empty = EmotionAndPolarity(Tokenize("good day"), NrcLexicons{}, ValenceLexicon(-1, 1));
  EXPECT_EQ(empty.joy, 0.0);
  EXPECT_EQ(empty.negative, 0.0);
  EXPECT_EQ(empty.polarity, 0.0);
}

TEST(FlagsTest, SpamBigramAndPersonHeuristic) {
  PhraseList spam = PhraseList::Parse("winner guaranteed\n");
  PhraseList hon = PhraseList::Parse("dr\nchef\n");
  EXPECT_TRUE(DetectFlags(Tokenize("Every winner guaranteed a prize"), spam, hon).contains_spam);
  EXPECT_FALSE(DetectFlags(Tokenize("The winner is guaranteed"), spam, hon).contains_spam);
  EXPECT_FALSE(DetectFlags(Tokenize("Angel is the owner"), spam, hon).mentions_person);
  EXPECT_TRUE(DetectFlags(Tokenize("the owner Angel smiled"), spam, hon).mentions_person);
  EXPECT_FALSE(DetectFlags(Tokenize("Yes. I think so. We love the USA."), spam, hon)
                   .mentions_person);
  EXPECT_TRUE(DetectFlags(Tokenize("Thanks to Dr. Ruiz"), spam, hon).mentions_person);
  const auto none = DetectFlags(Tokenize(""), spam, hon);
  EXPECT_FALSE(none.contains_spam);
  EXPECT_FALSE(none.mentions_person);
}

TEST(ExtractTest, GoldenVectorsBitForBit) {
  const auto& fixtures = crowdlift::testing::GoldenFixtures();
  const auto golden =
      crowdlift::testing::LoadGoldenVectors(std::string(CROWDLIFT_TEST_DATA_DIR) + "/lexicon_golden.tsv");
  ASSERT_EQ(golden.size(), fixtures.size());
  for (const auto& [name, text] : fixtures) {
    const auto v = ExtractLexiconFeatures(text, Bundled());
    ASSERT_EQ(v.values.size(), kLexiconFeatureCount);
    const auto& expected = golden.at(name);
    ASSERT_EQ(expected.size(), kLexiconFeatureCount);
    for (std::size_t i = 0; i < kLexiconFeatureCount; ++i) {
      const std::string& feature = LexiconFeatureNames()[i];
      EXPECT_EQ(v.values[i], expected.at(feature)) << name << " " << feature;
    }
  }
  EXPECT_NEAR(ExtractLexiconFeatures("We thank you.", Bundled()).Get("fk_grade"), -2.62, 1e-12);
}

TEST(ExtractTest, PureAndBounded) {
  const std::string text =
      "Our family restaurant has been open for 12 years! Please help us survive. We are "
      "worried and sad, but hopeful. Click here to donate.";
  const auto a = ExtractLexiconFeatures(text, Bundled());
  const auto b = ExtractLexiconFeatures(text, Bundled());
  EXPECT_EQ(a.values, b.values);
  for (std::size_t i = 0; i < kLexiconFeatureCount; ++i) {
    const std::string& n = LexiconFeatureNames()[i];
    EXPECT_TRUE(std::isfinite(a.values[i])) << n;
    if (n.starts_with("dict_") || n == "big_words" || n == "dictionary_words") {
      EXPECT_GE(a.values[i], 0.0) << n;
      EXPECT_LE(a.values[i], 100.0) << n;
    }
  }
  EXPECT_GE(a.Get("polarity"), -1.0);
  EXPECT_LE(a.Get("polarity"), 1.0);
}

TEST(ExtractTest, ErrorsOnEmptyTextAndMissingCategory) {
  EXPECT_THROW(ExtractLexiconFeatures("", Bundled()), ValidationError);
  TextResources partial = Bundled();
  partial.dictionary = CategoryDictionary::Parse("[we]\nwe\n", "partial");
  EXPECT_THROW(ExtractLexiconFeatures("We thank you.", partial), ValidationError);
  EXPECT_THROW(TextResources::LoadFromDirectory("/nonexistent"), IoError);
}

TEST(ExtractTest, FeatureNamesCanonical) {
  const auto& names = LexiconFeatureNames();
  EXPECT_EQ(names.size(), 105u);
  EXPECT_EQ(names.front(), "word_count");
  EXPECT_EQ(names.back(), "mentions_person");
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), 105u);
}

}  // namespace
}  // namespace crowdlift::text
