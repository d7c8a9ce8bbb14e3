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

#include "crowdlift/textfeat/resources.h"

#include <algorithm>
#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/textfeat/tokenizer.h"

namespace crowdlift::text {
namespace {

std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> Words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

void AppendUnique(std::vector<int>& v, int x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

CategoryDictionary CategoryDictionary::Parse(std::string_view text, std::string name) {
  CategoryDictionary dict(std::move(name));
  std::string current;
  int line_number = 0;
  for (std::string_view raw : Lines(text)) {
    ++line_number;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ValidationError(dict.name() + ":" + std::to_string(line_number) +
                              ": malformed category header");
      }
      current = AsciiLower(Trim(line.substr(1, line.size() - 2)));
      dict.AddCategory(current);
      continue;
    }
    if (current.empty()) {
      throw ValidationError(dict.name() + ":" + std::to_string(line_number) +
                            ": pattern before any category header");
    }
    for (std::string& w : Words(line)) dict.AddPattern(current, AsciiLower(w));
  }
  return dict;
}

CategoryDictionary CategoryDictionary::Load(const std::filesystem::path& path) {
  return Parse(ReadFileToString(path.string()), path.filename().string());
}

int CategoryDictionary::CategoryIndex(const std::string& category) {
  if (auto it = index_.find(category); it != index_.end()) return it->second;
  const int idx = static_cast<int>(categories_.size());
  categories_.push_back(category);
  patterns_.emplace_back();
  index_.emplace(category, idx);
  return idx;
}

void CategoryDictionary::AddCategory(const std::string& category) {
  if (category.empty()) throw ValidationError("category name must be nonempty");
  CategoryIndex(category);
}

void CategoryDictionary::AddPattern(const std::string& category, std::string pattern) {
  const auto star = pattern.find('*');
  if (pattern.empty() || pattern == "*") {
    throw ValidationError("empty pattern in category '" + category + "'");
  }
  if (star != std::string::npos && star != pattern.size() - 1) {
    throw ValidationError("wildcard must be the final character in pattern '" + pattern + "'");
  }
  const int idx = CategoryIndex(category);
  auto& existing = patterns_[idx];
  if (std::find(existing.begin(), existing.end(), pattern) != existing.end()) return;
  existing.push_back(pattern);
  if (star != std::string::npos) {
    std::string stem = pattern.substr(0, pattern.size() - 1);
    max_stem_length_ = std::max(max_stem_length_, stem.size());
    AppendUnique(stems_[stem], idx);
  } else {
    AppendUnique(literals_[pattern], idx);
  }
}

const std::vector<std::string>& CategoryDictionary::Patterns(const std::string& category) const {
  auto it = index_.find(category);
  if (it == index_.end()) throw ValidationError("unknown category '" + category + "'");
  return patterns_[it->second];
}

std::vector<int> CategoryDictionary::Match(std::string_view token) const {
  std::vector<int> hits;
  if (auto it = literals_.find(std::string(token)); it != literals_.end()) {
    for (int c : it->second) AppendUnique(hits, c);
  }
  const std::size_t longest = std::min(token.size(), max_stem_length_);
  for (std::size_t len = 1; len <= longest; ++len) {
    if (auto it = stems_.find(std::string(token.substr(0, len))); it != stems_.end()) {
      for (int c : it->second) AppendUnique(hits, c);
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

ValenceLexicon::ValenceLexicon(double min_score, double max_score)
    : min_(min_score), max_(max_score) {
  if (!(min_score <= max_score)) throw ValidationError("lexicon range must satisfy min <= max");
}

void ValenceLexicon::Add(const std::string& word, double score) {
  if (word.empty()) throw ValidationError("lexicon word must be nonempty");
  if (!(score >= min_ && score <= max_)) {
    throw ValidationError("lexicon score " + FormatDouble(score) + " for '" + word +
                          "' outside range [" + FormatDouble(min_) + ", " + FormatDouble(max_) +
                          "]");
  }
  entries_[word] = score;
}

const double* ValenceLexicon::Find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

ValenceLexicon ValenceLexicon::Parse(std::string_view text, const std::string& source) {
  ValenceLexicon lex;
  bool have_range = false;
  int line_number = 0;
  for (std::string_view raw : Lines(text)) {
    ++line_number;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_number);
    if (line.front() == '#') {
      const auto words = Words(line.substr(1));
      if (!words.empty() && words[0] == "range") {
        if (words.size() != 3) throw ValidationError(where + ": #range needs MIN and MAX");
        lex = ValenceLexicon(ParseDouble(words[1]), ParseDouble(words[2]));
        have_range = true;
      }
      continue;
    }
    if (!have_range) throw ValidationError(where + ": entry before #range directive");
    const auto fields = Words(line);
    if (fields.size() != 2) throw ValidationError(where + ": expected 'word<TAB>score'");
    try {
      lex.Add(AsciiLower(fields[0]), ParseDouble(fields[1]));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!have_range) throw ValidationError(source + ": missing #range directive");
  return lex;
}

ValenceLexicon ValenceLexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFileToString(path.string()), path.filename().string());
}

PhraseList PhraseList::Parse(std::string_view text) {
  PhraseList list;
  for (std::string_view raw : Lines(text)) {
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    list.Add(line);
  }
  return list;
}

PhraseList PhraseList::Load(const std::filesystem::path& path) {
  return Parse(ReadFileToString(path.string()));
}

void PhraseList::Add(std::string_view phrase) {
  const TokenizedText tok = Tokenize(phrase);
  if (tok.tokens.empty()) return;
  std::vector<std::string> words;
  for (const Token& t : tok.tokens) words.push_back(t.text);
  phrases_.push_back(std::move(words));
}

bool PhraseList::ContainsWord(std::string_view word) const {
  return std::any_of(phrases_.begin(), phrases_.end(),
                     [&](const auto& p) { return p.size() == 1 && p[0] == word; });
}

bool PhraseList::OccursIn(const std::vector<std::string>& tokens) const {
  for (const auto& phrase : phrases_) {
    if (phrase.size() > tokens.size()) continue;
    auto it = std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end());
    if (it != tokens.end()) return true;
  }
  return false;
}

TextResources TextResources::LoadFromDirectory(const std::filesystem::path& root) {
  auto require = [&](const std::filesystem::path& rel) {
    const auto full = root / rel;
    if (!std::filesystem::is_regular_file(full)) {
      throw IoError("missing text resource: " + full.string());
    }
    return full;
  };
  TextResources r;
  r.dictionary = CategoryDictionary::Load(require("dictionary/open_categories.dic"));
  r.concreteness = ValenceLexicon::Load(require("lexicons/concreteness.tsv"));
  r.dominance = ValenceLexicon::Load(require("lexicons/dominance.tsv"));
  r.polarity = ValenceLexicon::Load(require("lexicons/polarity.tsv"));
  r.nrc.joy = ValenceLexicon::Load(require("lexicons/nrc_joy.tsv"));
  r.nrc.sadness = ValenceLexicon::Load(require("lexicons/nrc_sadness.tsv"));
  r.nrc.positive = ValenceLexicon::Load(require("lexicons/nrc_positive.tsv"));
  r.nrc.negative = ValenceLexicon::Load(require("lexicons/nrc_negative.tsv"));
  r.spam = PhraseList::Load(require("lists/spam_words.txt"));
  r.honorifics = PhraseList::Load(require("lists/honorifics.txt"));
  return r;
}

}  // namespace crowdlift::text
