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

#ifndef CROWDLIFT_TEXTFEAT_RESOURCES_H_
#define CROWDLIFT_TEXTFEAT_RESOURCES_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crowdlift::text {

// Category -> word patterns. A pattern ending in '*' is a stem and matches
// any token it prefixes; other patterns match whole tokens.
class CategoryDictionary {
 public:
  CategoryDictionary() = default;
  explicit CategoryDictionary(std::string name) : name_(std::move(name)) {}

  // Text format: "[category]" header lines followed by whitespace-separated
  // patterns; '#' starts a comment line.
  static CategoryDictionary Parse(std::string_view text, std::string name);
  static CategoryDictionary Load(const std::filesystem::path& path);

  // Throws ValidationError for an empty pattern or an interior wildcard.
  void AddPattern(const std::string& category, std::string pattern);
  // Declares a category with no patterns (matches nothing).
  void AddCategory(const std::string& category);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& categories() const { return categories_; }
  bool HasCategory(const std::string& category) const { return index_.contains(category); }
  const std::vector<std::string>& Patterns(const std::string& category) const;

  // Indices (into categories()) of every category the token belongs to,
  // ascending, each at most once.
  std::vector<int> Match(std::string_view token) const;

 private:
  int CategoryIndex(const std::string& category);

  std::string name_;
  std::vector<std::string> categories_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<std::string>> patterns_;
  std::unordered_map<std::string, std::vector<int>> literals_;
  std::unordered_map<std::string, std::vector<int>> stems_;
  std::size_t max_stem_length_ = 0;
};

// Word -> real score, all scores inside [range.first, range.second].
class ValenceLexicon {
 public:
  ValenceLexicon() = default;
  ValenceLexicon(double min_score, double max_score);

  // Text format: "#range MIN MAX" directive, then "word<TAB>score" lines;
  // other '#' lines are comments.
  static ValenceLexicon Parse(std::string_view text, const std::string& source);
  static ValenceLexicon Load(const std::filesystem::path& path);

  // Throws ValidationError if the score is outside the range.
  void Add(const std::string& word, double score);

  const double* Find(std::string_view word) const;
  std::pair<double, double> range() const { return {min_, max_}; }
  double Midpoint() const { return 0.5 * (min_ + max_); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  double min_ = 0.0;
  double max_ = 0.0;
  std::unordered_map<std::string, double> entries_;
};

// Lowercase word sequences (single words or short phrases).
class PhraseList {
 public:
  static PhraseList Parse(std::string_view text);
  static PhraseList Load(const std::filesystem::path& path);

  void Add(std::string_view phrase);
  bool ContainsWord(std::string_view word) const;
  // True if any listed phrase occurs as a contiguous run of `tokens`.
  bool OccursIn(const std::vector<std::string>& tokens) const;
  bool empty() const { return phrases_.empty(); }

 private:
  std::vector<std::vector<std::string>> phrases_;
};

struct NrcLexicons {
  ValenceLexicon joy{0.0, 1.0};
  ValenceLexicon sadness{0.0, 1.0};
  ValenceLexicon positive{0.0, 1.0};
  ValenceLexicon negative{0.0, 1.0};
};

// Everything the lexicon feature extractor reads. Immutable after load.
struct TextResources {
  CategoryDictionary dictionary;
  ValenceLexicon concreteness{1.0, 5.0};
  ValenceLexicon dominance{1.0, 9.0};
  ValenceLexicon polarity{-1.0, 1.0};
  NrcLexicons nrc;
  PhraseList spam;
  PhraseList honorifics;

  // Expects dictionary/open_categories.dic, lexicons/*.tsv and lists/*.txt
  // under `root`. Throws IoError naming the first missing file.
  static TextResources LoadFromDirectory(const std::filesystem::path& root);
};

}  // namespace crowdlift::text

#endif  // CROWDLIFT_TEXTFEAT_RESOURCES_H_
