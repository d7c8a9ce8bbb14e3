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

#include "crowdlift/textfeat/syllables.h"

#include <algorithm>
#include <array>
#include <string>

#include "crowdlift/common/error.h"

namespace crowdlift::text {
namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool IsConsonant(char c) { return c >= 'a' && c <= 'z' && !IsVowel(c); }

bool EndsWith(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         std::string_view(s).substr(s.size() - suffix.size()) == suffix;
}

int VowelGroups(const std::string& w) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool vowel = IsVowel(w[i]) && !(i == 0 && w[i] == 'y');
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  return groups;
}

int HiatusCount(const std::string& w) {
  int extra = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const char a = w[i];
    const char b = w[i + 1];
    const char prev = i > 0 ? w[i - 1] : '\0';
    if (a == 'i' && b == 'a' && prev != 'c' && prev != 't' && prev != 's' && prev != 'g') ++extra;
    if (a == 'u' && b == 'a' && prev != 'q' && prev != 'g') ++extra;
    if (a == 'i' && b == 'o' && (prev == 'd' || prev == 'r' || prev == 'b')) ++extra;
    if (a == 'e' && b == 'o' && (prev == 'd' || (i == 1 && (prev == 'g' || prev == 'n')))) ++extra;
    if (a == 'y' && b == 'i' && i > 0) ++extra;
    if (a == 'u' && b == 'o' && prev != 'q') ++extra;
  }
  if (w.starts_with("reo")) ++extra;
  return extra;
}

int SilentSuffixE(const std::string& w) {
  static constexpr std::array<std::string_view, 5> kSuffixes = {"ment", "ful", "less", "ness",
                                                                "ly"};
  for (std::string_view suffix : kSuffixes) {
    if (w.size() < suffix.size() + 3 || !EndsWith(w, suffix)) continue;
    const std::size_t e = w.size() - suffix.size() - 1;
    if (w[e] == 'e' && IsConsonant(w[e - 1]) && IsVowel(w[e - 2])) return 1;
  }
  return 0;
}

}  // namespace

int CountSyllables(std::string_view word) {
  if (word.empty()) throw ValidationError("syllable count requires a nonempty word");
  std::string w;
  w.reserve(word.size());
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c < 'a' || c > 'z') {
      throw ValidationError("syllable count requires an alphabetic word, got '" +
                            std::string(word) + "'");
    }
    w.push_back(c);
  }
  if (w.size() <= 3) return 1;

  std::string stem = w;
  if (EndsWith(stem, "es")) {
    const char p = stem[stem.size() - 3];
    const char pp = stem.size() >= 4 ? stem[stem.size() - 4] : '\0';
    const bool keep = p == 's' || p == 'x' || p == 'z' || p == 'g' || p == 'c' ||
                      (p == 'h' && (pp == 'c' || pp == 's')) || (p == 'l' && IsConsonant(pp));
    if (!keep) stem.resize(stem.size() - 2);
  } else if (EndsWith(stem, "ed")) {
    const char p = stem[stem.size() - 3];
    if (p != 't' && p != 'd') stem.resize(stem.size() - 2);
  } else if (EndsWith(stem, "e")) {
    const char p = stem[stem.size() - 2];
    const bool consonant_le = p == 'l' && stem.size() >= 3 && IsConsonant(stem[stem.size() - 3]);
    if (!consonant_le && p != 'e') stem.pop_back();
  }

  int count = VowelGroups(stem) + HiatusCount(stem) - SilentSuffixE(w);
  return std::max(count, 1);
}

int TokenSyllables(std::string_view token) {
  std::string letters;
  for (char c : token) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) letters.push_back(c);
  }
  return letters.empty() ? 1 : CountSyllables(letters);
}

}  // namespace crowdlift::text
