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

#ifndef CROWDLIFT_TEXTFEAT_TOKENIZER_H_
#define CROWDLIFT_TEXTFEAT_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace crowdlift::text {

struct Token {
  // ASCII-lowercased, curly apostrophes folded to '.
  std::string text;
  // Byte range of the surface form in the raw text.
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Half-open range of token indices.
struct SentenceRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

struct TokenizedText {
  std::string raw;
  std::vector<Token> tokens;
  // Contiguous, non-overlapping, covering every token.
  std::vector<SentenceRange> sentences;

  std::string_view Surface(std::size_t token) const {
    return std::string_view(raw).substr(tokens[token].begin,
                                        tokens[token].end - tokens[token].begin);
  }
  // Raw text of a sentence from its first token through trailing terminal
  // punctuation and closing quotes.
  std::string_view SentenceText(std::size_t sentence) const;
};

// Word tokens on Unicode-aware boundaries (letters, digits, any non-ASCII
// code point that is not punctuation or space). Apostrophes between word
// characters and '.'/',' between digits stay inside the token. Sentences end
// at runs of . ! ? unless the '.' follows a guarded abbreviation.
TokenizedText Tokenize(std::string_view text);

// Convenience: the raw text of every sentence.
std::vector<std::string> SplitSentences(std::string_view text);

// Abbreviations that do not end a sentence when followed by '.'.
const std::vector<std::string>& AbbreviationGuardList();

}  // namespace crowdlift::text

#endif  // CROWDLIFT_TEXTFEAT_TOKENIZER_H_
