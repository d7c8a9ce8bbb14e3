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

#include "crowdlift/textfeat/tokenizer.h"

#include <algorithm>
#include <cstdint>

namespace crowdlift::text {
namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 1;
};

CodePoint Decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 1;
  if (i + len > s.size()) return {0xFFFD, 1};
  char32_t cp = len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b >> 6) != 0x2) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (len == 1) cp = 0xFFFD;
  return {cp, len};
}

bool IsApostrophe(char32_t c) { return c == U'\'' || c == U'’' || c == U'‘'; }

bool IsUnicodeSpaceOrPunct(char32_t c) {
  if (c == 0xA0 || c == 0xAB || c == 0xBB || c == 0xB7 || c == 0xBF || c == 0xA1) return true;
  if (c >= 0x2000 && c <= 0x206F) return true;  // General Punctuation block.
  if (c == 0x3000 || c == 0xFEFF || c == 0xFFFD) return true;
  return false;
}

bool IsWordChar(char32_t c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  }
  return !IsUnicodeSpaceOrPunct(c);
}

bool IsDigit(char32_t c) { return c >= '0' && c <= '9'; }

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsClosing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

}  // namespace

const std::vector<std::string>& AbbreviationGuardList() {
  static const std::vector<std::string> kList = {
      "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "inc", "ltd", "co",
      "corp", "ave", "blvd", "dept", "est", "approx", "jan", "feb", "aug", "sept", "oct",
      "nov", "dec", "mt", "ft", "no"};
  return kList;
}

std::string_view TokenizedText::SentenceText(std::size_t sentence) const {
  const SentenceRange& range = sentences[sentence];
  const std::size_t begin = tokens[range.begin].begin;
  std::size_t end = tokens[range.end - 1].end;
  const std::size_t limit = range.end < tokens.size() ? tokens[range.end].begin : raw.size();
  std::size_t probe = end;
  bool seen_terminal = false;
  while (probe < limit) {
    const char c = raw[probe];
    if (IsTerminal(c)) {
      seen_terminal = true;
    } else if (!(seen_terminal && IsClosing(c))) {
      break;
    }
    ++probe;
    end = probe;
  }
  return std::string_view(raw).substr(begin, end - begin);
}

TokenizedText Tokenize(std::string_view text) {
  TokenizedText out;
  out.raw = std::string(text);
  const std::string_view s = out.raw;

  std::size_t i = 0;
  while (i < s.size()) {
    CodePoint cp = Decode(s, i);
    if (!IsWordChar(cp.value)) {
      i += cp.length;
      continue;
    }
    Token tok;
    tok.begin = i;
    while (i < s.size()) {
      cp = Decode(s, i);
      if (IsWordChar(cp.value)) {
        if (cp.value == U'’' || cp.value == U'‘') {
          tok.text.push_back('\'');
        } else if (cp.length == 1) {
          char c = s[i];
          if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
          tok.text.push_back(c);
        } else {
          tok.text.append(s.substr(i, cp.length));
        }
        i += cp.length;
        continue;
      }
      // Joiners: apostrophe between word characters, '.'/',' between digits.
      if (i + cp.length < s.size()) {
        const CodePoint next = Decode(s, i + cp.length);
        const CodePoint prev = Decode(s, i - 1);
        if (IsApostrophe(cp.value) && IsWordChar(next.value) && !IsDigit(next.value)) {
          tok.text.push_back('\'');
          i += cp.length;
          continue;
        }
        if ((cp.value == '.' || cp.value == ',') && IsDigit(prev.value) && IsDigit(next.value)) {
          tok.text.push_back(static_cast<char>(cp.value));
          i += cp.length;
          continue;
        }
      }
      break;
    }
    tok.end = i;
    out.tokens.push_back(std::move(tok));
  }

  // Sentence boundaries from the gaps between consecutive tokens.
  const auto& abbreviations = AbbreviationGuardList();
  std::size_t start = 0;
  for (std::size_t t = 0; t < out.tokens.size(); ++t) {
    const std::size_t gap_begin = out.tokens[t].end;
    const std::size_t gap_end = t + 1 < out.tokens.size() ? out.tokens[t + 1].begin : s.size();
    const std::string_view gap = s.substr(gap_begin, gap_end - gap_begin);
    const bool last = t + 1 == out.tokens.size();
    bool boundary = false;
    if (gap.find_first_of("!?") != std::string_view::npos) {
      boundary = true;
    } else if (gap.find('.') != std::string_view::npos) {
      const std::string& word = out.tokens[t].text;
      const bool single_letter = word.size() == 1 && word[0] >= 'a' && word[0] <= 'z';
      const bool guarded =
          gap.front() == '.' && gap.find('.', 1) == std::string_view::npos &&
          (single_letter ||
           std::find(abbreviations.begin(), abbreviations.end(), word) != abbreviations.end());
      boundary = !guarded;
    }
    if (boundary || last) {
      out.sentences.push_back({start, t + 1});
      start = t + 1;
    }
  }
  return out;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  const TokenizedText tok = Tokenize(text);
  std::vector<std::string> out;
  out.reserve(tok.sentences.size());
  for (std::size_t s = 0; s < tok.sentences.size(); ++s) out.emplace_back(tok.SentenceText(s));
  return out;
}

}  // namespace crowdlift::text
